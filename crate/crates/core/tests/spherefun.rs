use proptest::prelude::*;
use spherepos::spherefun::{
    analyze, integral, lp_norm, synthesize, synthesize_on, Grid, Kind, Spectrum, StarFunction,
};

fn zonal_spectrum(n: usize) -> impl Strategy<Value = Spectrum> {
    (0usize..=8).prop_flat_map(move |half| {
        prop::collection::vec(-1.0f64..1.0, half + 1)
            .prop_map(move |c| Spectrum::zonal(n, c).unwrap())
    })
}

fn s2_spectrum() -> impl Strategy<Value = Spectrum> {
    (0usize..=5).prop_flat_map(|half| {
        let k = 2 * half;
        let len = Spectrum::zeros(3, Kind::FullS2, k).unwrap().coeffs().len();
        prop::collection::vec(-1.0f64..1.0, len).prop_map(move |c| {
            let mut s = Spectrum::zeros(3, Kind::FullS2, k).unwrap();
            s.coeffs_mut().copy_from_slice(&c);
            s
        })
    })
}

fn any_spectrum() -> impl Strategy<Value = Spectrum> {
    prop_oneof![
        (2usize..=7).prop_flat_map(zonal_spectrum),
        s2_spectrum(),
    ]
}

/// A strictly positive function: a large constant plus a random perturbation.
fn positive(s: Spectrum) -> StarFunction {
    let bump = s.coeffs().iter().map(|c| c.abs()).sum::<f64>();
    let unit = Spectrum::constant(s.n(), s.kind(), s.band_limit(), 1.0).unwrap();
    StarFunction::new(s.axpy(1.0 + bump, &unit).unwrap())
}

fn max_abs_diff(a: &Spectrum, b: &Spectrum) -> f64 {
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn analysis_inverts_synthesis(s in any_spectrum(), extra in 0usize..6) {
        let g = synthesize(&s, s.band_limit() + 1 + extra).unwrap();
        let back = analyze(&g, s.band_limit()).unwrap();
        let scale = s.coeffs().iter().fold(1e-300f64, |m, v| m.max(v.abs()));
        prop_assert!(max_abs_diff(&back, &s) <= 1e-10 * scale);
    }

    #[test]
    fn grid_pairing_matches_coefficient_pairing(pair in any_spectrum().prop_flat_map(|f| {
        let h = match f.kind() {
            Kind::Zonal => zonal_spectrum(f.n()).boxed(),
            Kind::FullS2 => s2_spectrum().boxed(),
        };
        (Just(f), h)
    })) {
        let (f, h) = pair;
        let k = f.band_limit().max(h.band_limit());
        let grid = Grid::for_kind(f.n(), f.kind(), k + 1).unwrap();
        let fg = synthesize_on(&f, &grid).unwrap();
        let hg = synthesize_on(&h, &grid).unwrap();
        let direct = integral(&fg.mul(&hg).unwrap());
        let spectral = f.pairing(&h).unwrap();
        let scale = (f.energy() * h.energy()).sqrt().max(1e-300);
        prop_assert!((direct - spectral).abs() <= 1e-10 * scale,
            "direct {} vs spectral {}", direct, spectral);
    }

    #[test]
    fn operations_keep_odd_degrees_out(s in any_spectrum()) {
        // only even degrees are representable, and analysis of an even
        // function reports negligible odd energy
        let g = synthesize(&s, s.band_limit() + 4).unwrap();
        let a = spherepos::spherefun::analyze_with_diagnostics(&g, s.band_limit()).unwrap();
        prop_assert!(a.odd_energy_ratio <= 1e-20);
        prop_assert!(a.spectrum.degrees().all(|k| k % 2 == 0));
    }

    #[test]
    fn holder_inequality(
        pair in (2usize..=6).prop_flat_map(|n| (zonal_spectrum(n), zonal_spectrum(n))),
        p_index in 0usize..3,
    ) {
        let p = [1.25, 2.0, 3.0][p_index];
        let f = positive(pair.0);
        let g = positive(pair.1);
        let k = f.band_limit().max(g.band_limit()).max(2);
        let grid = Grid::zonal(f.n(), 8 * k + 16).unwrap();
        let fv = synthesize_on(f.spectrum(), &grid).unwrap().map(|v| v.powf(p - 1.0));
        let gv = synthesize_on(g.spectrum(), &grid).unwrap();
        let lhs = integral(&fv.mul(&gv).unwrap());
        let rhs = lp_norm(&f, p).unwrap().powf(p - 1.0) * lp_norm(&g, p).unwrap();
        prop_assert!(lhs <= rhs + 1e-9, "{} > {}", lhs, rhs);
    }
}

#[test]
fn holder_inequality_on_s2() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for &p in &[1.25, 2.0, 3.0] {
        for _ in 0..4 {
            let mut make = || {
                let mut s = Spectrum::zeros(3, Kind::FullS2, 6).unwrap();
                for c in s.coeffs_mut() {
                    *c = rng.gen_range(-0.3..0.3);
                }
                positive(s)
            };
            let f = make();
            let g = make();
            let grid = Grid::full_s2(40).unwrap();
            let fv = synthesize_on(f.spectrum(), &grid).unwrap().map(|v| v.powf(p - 1.0));
            let gv = synthesize_on(g.spectrum(), &grid).unwrap();
            let lhs = integral(&fv.mul(&gv).unwrap());
            let rhs = lp_norm(&f, p).unwrap().powf(p - 1.0) * lp_norm(&g, p).unwrap();
            assert!(lhs <= rhs + 1e-9, "p = {p}: {lhs} > {rhs}");
        }
    }
}

#[test]
fn integral_examples() {
    let one5 = Spectrum::constant(5, Kind::Zonal, 0, 1.0).unwrap();
    let v = integral(&synthesize(&one5, 3).unwrap());
    assert!((v - 26.318_945_069_6).abs() < 1e-9);
}

#[test]
fn lp_norm_of_perturbed_legendre_uses_exact_parseval() {
    // 4π(1 + 0.36/5) = 4π · 1.072
    let f = StarFunction::new(Spectrum::zonal(3, vec![1.0, 0.6]).unwrap());
    let v = lp_norm(&f, 2.0).unwrap();
    assert!((v - 3.670_306_431_157_082).abs() < 1e-13, "{v}");
}
