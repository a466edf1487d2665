//! Power-iteration eigendata against a dense eigensolver on small bases.

use nalgebra::{DMatrix, DVector};
use symbeta::{build_system, BuildOptions, Kneading, Params, SolveOptions, TransferSystem};

const CASES: &[(u8, &str, &str, usize)] = &[
    (1, "2", "digit:0,1", 3),
    (2, "beta_T", "digit:0,0.5,-0.25", 3),
    (3, "3.5", "geometric:c=1,theta=0.25,K=20", 3),
    (3, "3.5", "block:2:12=1,21=0.5,*=0", 3),
    (4, "4", "geometric:c=-0.7,theta=0.4,K=24", 2),
    (4, "5", "digit:1,0,0,0,1", 2),
    (5, "5.5", "digit:0.3,-0.1,0.2,0.9,0,0.4", 2),
];

fn system(m: u8, beta: &str, a: &str, n: usize) -> TransferSystem {
    let p = Params::parse(m, beta).unwrap();
    let k = Kneading::new(&p, 96);
    build_system(&p, &k, &a.parse().unwrap(), n, &BuildOptions::default())
        .unwrap()
        .solved_with(&SolveOptions::default())
        .unwrap()
}

fn dense(t: &TransferSystem) -> DMatrix<f64> {
    let d = t.to_dense();
    let n = d.len();
    DMatrix::from_fn(n, n, |i, j| d[i][j])
}

/// Positive unit null vector of `M - λI`, from the smallest singular value.
fn perron_vector(m: &DMatrix<f64>, lambda: f64) -> (DVector<f64>, f64) {
    let n = m.nrows();
    let shifted = m - DMatrix::identity(n, n) * lambda;
    let svd = shifted.svd(false, true);
    let (idx, smallest) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, s)| (i, *s))
        .unwrap();
    let v: DVector<f64> = svd.v_t.unwrap().row(idx).transpose();
    let v = if v.sum() < 0.0 { -v } else { v };
    (v, smallest)
}

#[test]
fn eigendata_matches_dense_solver() {
    for &(m, beta, a, n) in CASES {
        let t = system(m, beta, a, n);
        let e = t.solved().unwrap();
        let mat = dense(&t);
        let eig = mat.complex_eigenvalues();
        let lambda = eig.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let tag = format!("m={m} beta={beta} A={a} n={n}");
        assert!((e.lambda() - lambda).abs() <= 1e-10 * lambda, "{tag}: {} vs {lambda}", e.lambda());

        let near = eig.iter().filter(|z| (z.norm() - lambda).abs() < 1e-8 * lambda).count();
        assert_eq!(near, 1, "{tag}: leading eigenvalue not simple and isolated");

        let (psi, s1) = perron_vector(&mat, lambda);
        let (rho, s2) = perron_vector(&mat.transpose(), lambda);
        assert!(s1 < 1e-9 * lambda && s2 < 1e-9 * lambda, "{tag}");
        assert!(psi.iter().all(|x| *x > 0.0) && rho.iter().all(|x| *x > 0.0), "{tag}");
        let rho = &rho / rho.sum();
        let psi = &psi / rho.dot(&psi);

        let got_psi = e.psi();
        let got_rho = e.rho();
        for i in 0..mat.nrows() {
            assert!((got_psi[i] - psi[i]).abs() <= 1e-10 * psi.amax(), "{tag}: psi[{i}]");
            assert!((got_rho[i] - rho[i]).abs() <= 1e-10 * rho.amax(), "{tag}: rho[{i}]");
        }
    }
}

#[test]
fn log_and_linear_domains_agree() {
    use symbeta::transfer::Domain;
    for &(m, beta, a, n) in CASES {
        let base = system(m, beta, a, n);
        for t in [1.0, 20.0] {
            let s = base.scaled(t);
            let solve = |d| {
                s.power_solve(&SolveOptions { domain: Some(d), ..Default::default() })
                    .unwrap()
            };
            let lin = solve(Domain::Linear);
            let log = solve(Domain::Log);
            assert!(lin.converged && log.converged, "m={m} beta={beta} A={a} t={t}: {} {} {:e} {:e}", lin.iterations, log.iterations, lin.residual, log.residual);
            assert!((lin.log_lambda - log.log_lambda).abs() < 1e-12 * t.max(1.0));
        }
    }
}
