use ext_engine::{minimal_resolution, GradedAlgebra};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().unwrap()).collect();
    let (n, stem, s) = (args[0], args[1], args[2]);
    let t0 = std::time::Instant::now();
    let alg = GradedAlgebra::milnor(n).unwrap();
    let res = minimal_resolution(&alg, stem, s).unwrap();
    eprintln!("resolution {:?}", t0.elapsed());
    for (f, row) in res.dims().iter().enumerate().rev() {
        println!("{f:2} {}", row.iter().map(|d| d.to_string()).collect::<String>());
    }
    let t1 = std::time::Instant::now();
    let c = ext_engine::export_chart(&res);
    eprintln!("export {:?} products {}", t1.elapsed(), c.products.len());
}
