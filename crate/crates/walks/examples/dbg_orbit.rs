fn main() {
    let f = walks::model::StepModel::parse("1,0;-1,0;0,-1;-2,1").unwrap();
    let rep = walks::orbit::orbit_bfs(&f, 200);
    println!("verdict {:?} size {} diag {:?}", rep.verdict, rep.size, rep.diagnostics);
    use walks::algebra::num::q;
    for spec in [(q(2), q(3)), (q(3), q(5))] {
        match walks::orbit::orbit_bfs_at(&f, (&spec.0, &spec.1), 200) {
            Ok(r) => println!("spec {:?}: closed={} size={} edges={:?}", spec, r.closed, r.size, r.edges),
            Err(e) => println!("spec {:?}: ERR {}", spec, e),
        }
    }
}
