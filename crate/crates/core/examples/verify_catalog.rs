fn main() {
    let report = lieaut::catalog::verify_catalog(20, 7);
    println!("{report}");
}
