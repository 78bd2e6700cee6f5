fn main() {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1);
    let stem: usize = std::env::args().nth(2).and_then(|a| a.parse().ok()).unwrap_or(12);
    let s: usize = std::env::args().nth(3).and_then(|a| a.parse().ok()).unwrap_or(8);
    let t = std::time::Instant::now();
    let d = oracles::cobar::ext_dims(n, stem, s);
    for (f, row) in d.iter().enumerate().rev() {
        println!("{f:2} {:?}", row);
    }
    eprintln!("{:?}", t.elapsed());
}
