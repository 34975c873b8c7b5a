use qrt_core::linalg::rng::RngHandle;
use qrt_core::linalg::{C64, DenseOperator};
use qrt_core::mat_exp;

fn probe(stack: usize) {
    let h = std::thread::Builder::new().stack_size(stack).spawn(move || {
        let mut rng = RngHandle::new(8);
        let g = rng.ginibre(256).unwrap();          // svd inside
        let herm = g.add(&g.dagger()).unwrap().scale(C64::new(0.5 / g.fro_norm(), 0.0));
        let _ = mat_exp(&herm).unwrap();            // eigh inside
        let gen = g.scale(C64::new(3.0 / g.fro_norm(), 0.0));
        let _ = mat_exp(&gen).unwrap();             // pade inside
        "ok"
    }).unwrap();
    match h.join() {
        Ok(s) => println!("stack {} KiB: {s}", stack / 1024),
        Err(_) => println!("stack {} KiB: CRASHED", stack / 1024),
    }
}

fn main() {
    for s in [2 * 1024 * 1024, 4 * 1024 * 1024, 8 * 1024 * 1024] {
        probe(s);
    }
}
