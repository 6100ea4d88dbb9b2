macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $name() {
            $name::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(subspace_alternative, "subspace_alternative.rs");
example!(exact_rational, "exact_rational.rs");
example!(lp_feasibility, "lp_feasibility.rs");
example!(jacobi_eigen, "jacobi_eigen.rs");
example!(two_eigenvalue_theorem, "two_eigenvalue_theorem.rs");
example!(counterexample, "counterexample.rs");
example!(matrix_market, "matrix_market.rs");
