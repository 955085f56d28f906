use kzosc_core::ising::{uq_adiabatic_diag, IsingDiagParams};

#[test]
fn probe() {
    for &omega in &[13.0f64, 15.0, 16.0, 17.0, 18.0, 19.0, 20.0] {
        let p = IsingDiagParams::new(7.0, 0.05, omega, 0.5, 200).unwrap();
        let kres: f64 = (omega / std::f64::consts::PI).powi(2);
        let qres = (kres.sqrt() / 7.0).asin();
        let h = 1e-7;
        let f0 = uq_adiabatic_diag(&p, qres).unwrap();
        let f1 = uq_adiabatic_diag(&p, qres + h).unwrap();
        let f2 = uq_adiabatic_diag(&p, qres + 2.0 * h).unwrap();
        println!(
            "omega={omega}: kres={kres:.1} f={f0:.6e} d2={:.3e}",
            (f2 - 2.0 * f1 + f0).abs()
        );
    }
    // seam jump between series and integral-representation branches at |a| = |z|/4
    for &omega in &[9.0f64, 10.0, 11.0, 12.0] {
        let p = IsingDiagParams::new(7.0, 0.05, omega, 0.5, 200).unwrap();
        let kseam = omega * omega / 4.0;
        if kseam >= 49.0 {
            continue;
        }
        let qseam = ((kseam / 49.0).sqrt()).asin();
        let h = 1e-9;
        let lo = uq_adiabatic_diag(&p, qseam - h).unwrap();
        let hi = uq_adiabatic_diag(&p, qseam + h).unwrap();
        println!(
            "omega={omega}: kseam={kseam:.2} lo={lo:.8e} hi={hi:.8e} jump_rel={:.3e}",
            ((hi - lo) / lo).abs()
        );
    }
}
