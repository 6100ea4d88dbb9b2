// Cyclic Jacobi rotations diagonalize a symmetric matrix. Close eigenvalues
// are grouped, and each group yields an orthonormal eigenspace basis.

use nonneg::eigen::DEFAULT_SWEEP_TOL;
use nonneg::{eigenspaces, jacobi_eigendecomposition, SymmetricMatrix};

pub fn run_example() -> nonneg::Result<()> {
    // 2I + J: eigenvalue 5 on (1, 1, 1), eigenvalue 2 on the sum-zero plane
    let m = SymmetricMatrix::from_rows(&[
        vec![3.0, 1.0, 1.0],
        vec![1.0, 3.0, 1.0],
        vec![1.0, 1.0, 3.0],
    ])?;
    let d = jacobi_eigendecomposition(&m, DEFAULT_SWEEP_TOL)?;
    println!("eigenvalues {:?} after {} sweeps", d.eigenvalues, d.sweeps);
    println!("orthogonality error {:e}", d.orthogonality_error());
    println!("reconstruction error {:e}", d.reconstruct().max_abs_diff(m.matrix()));

    for cluster in eigenspaces(&m, 1e-8)? {
        println!(
            "lambda = {:.6}, multiplicity {}",
            cluster.representative_value, cluster.multiplicity
        );
        for u in cluster.space.basis() {
            let mu = m.matvec(u);
            let residual = mu
                .iter()
                .zip(u)
                .map(|(a, b)| (a - cluster.representative_value * b).abs())
                .fold(0.0, f64::max);
            assert!(residual < 1e-12);
        }
    }
    Ok(())
}

fn main() -> nonneg::Result<()> {
    run_example()
}
