use boundcs::calibration::CalibrationFn;
use boundcs::confseq::{evcs, evcs_grid, hausdorff, search_window, vcs};
use boundcs::numerics::{find_root_monotone, integrate_line_with_breaks, Bracket, Tolerance};
use boundcs::priors::posterior_mean;
use boundcs::{ConfidenceRegion, CsMethod, CsQuery, GaussianModel, KappaCalibration, Prior, SufficientStat};
use proptest::prelude::*;

fn unit() -> GaussianModel {
    GaussianModel::new(1.0).unwrap()
}

fn fast_prior(which: u8, loc: f64, scale: f64) -> Prior {
    match which % 3 {
        0 => Prior::gaussian(loc, scale).unwrap(),
        1 => Prior::laplace(loc, scale).unwrap(),
        _ => Prior::gaussian_mixture(vec![0.3, 0.7], vec![loc - 2.0, loc + 1.0], vec![scale, 0.5 * scale]).unwrap(),
    }
}

fn region_from(raw: &[(f64, f64)]) -> ConfidenceRegion {
    let mut ends: Vec<f64> = raw.iter().flat_map(|&(a, b)| [a, a + b]).collect();
    ends.sort_by(f64::total_cmp);
    ends.dedup();
    ConfidenceRegion::new(ends.chunks_exact(2).map(|c| (c[0], c[1])).collect()).unwrap()
}

fn brute_hausdorff(a: &ConfidenceRegion, b: &ConfidenceRegion) -> f64 {
    let sweep = |from: &ConfidenceRegion, to: &ConfidenceRegion| {
        let mut worst = 0.0_f64;
        for &(lo, hi) in from.intervals() {
            for i in 0..=400 {
                let x = lo + (hi - lo) * i as f64 / 400.0;
                worst = worst.max(to.distance_to(x).unwrap());
            }
        }
        worst
    };
    sweep(a, b).max(sweep(b, a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hausdorff_matches_brute_force(
        a in prop::collection::vec((-20.0..20.0f64, 0.0..5.0f64), 1..4),
        b in prop::collection::vec((-20.0..20.0f64, 0.0..5.0f64), 1..4),
    ) {
        let (ra, rb) = (region_from(&a), region_from(&b));
        let exact = hausdorff(&ra, &rb).unwrap();
        let brute = brute_hausdorff(&ra, &rb);
        // the brute-force sweep can only undershoot, by at most half a sample step
        prop_assert!(brute <= exact + 1e-12);
        prop_assert!(exact - brute <= 5.0 / 400.0 + 1e-12);
        prop_assert!((hausdorff(&rb, &ra).unwrap() - exact).abs() < 1e-12);
    }

    #[test]
    fn calibration_decreases_in_threshold(which in 0u8..3, theta0 in -6.0..6.0f64, l1 in 0.0..6.0f64, dl in 0.01..4.0f64) {
        let p = fast_prior(which, 0.0, 1.0);
        let cal = CalibrationFn::new(&p, unit(), theta0).unwrap();
        let base = cal.ln_c_star().max(-30.0) + l1;
        let g1 = cal.g_ln(base).unwrap();
        let g2 = cal.g_ln(base + dl).unwrap();
        prop_assert!(g2 <= g1 + 1e-10);
        prop_assert!((0.0..=1.0).contains(&g1));
    }

    #[test]
    fn regions_nest_in_alpha(
        which in 0u8..3, n in 1u64..60, y in -15.0..15.0f64, a1 in 0.02..0.5f64, gap in 0.05..0.4f64,
    ) {
        let p = fast_prior(which, 0.0, 1.0);
        let stat = SufficientStat::new(n, y).unwrap();
        let q1 = CsQuery::new(&p, unit(), a1, stat, CsMethod::EvilleBracket).unwrap();
        let q2 = q1.with_alpha(a1 + gap).unwrap();
        let slack = 1e-7 * unit().mean_sd(n);
        prop_assert!(vcs(&q2).unwrap().is_subset_of(&vcs(&q1).unwrap(), slack));
        prop_assert!(evcs(&q2).unwrap().is_subset_of(&evcs(&q1).unwrap(), slack));
    }

    #[test]
    fn eville_inside_ville_and_holds_posterior_mean(
        which in 0u8..3, n in 1u64..60, y in -30.0..30.0f64, alpha in 0.01..0.9f64,
    ) {
        let p = fast_prior(which, 0.0, 0.7);
        let stat = SufficientStat::new(n, y).unwrap();
        let q = CsQuery::new(&p, unit(), alpha, stat, CsMethod::EvilleBracket).unwrap();
        let e = evcs(&q).unwrap();
        let slack = 1e-7 * unit().mean_sd(n);
        prop_assert!(e.is_subset_of(&vcs(&q).unwrap(), slack));
        let pm = posterior_mean(&p, &unit(), &stat).unwrap();
        prop_assert!(e.distance_to(pm).unwrap() <= slack);
    }

    #[test]
    fn bracket_and_grid_agree(which in 0u8..2, n in 1u64..40, y in -10.0..10.0f64, alpha in 0.02..0.6f64) {
        let p = fast_prior(which, 0.0, 1.0);
        let stat = SufficientStat::new(n, y).unwrap();
        let q = CsQuery::new(&p, unit(), alpha, stat, CsMethod::EvilleGrid).unwrap();
        let grid = evcs_grid(&q, 2001).unwrap();
        prop_assume!(grid.len() == 1);
        let bracket = evcs(&q.with_method(CsMethod::EvilleBracket).unwrap()).unwrap();
        let (lo, hi) = search_window(&q).unwrap();
        prop_assert!(hausdorff(&grid, &bracket).unwrap() < 2.0 * (hi - lo) / 2000.0);
    }

    #[test]
    fn kappa_calibration_is_continuous_at_zero(ln_x in 0.01..14.0f64) {
        let at_zero = KappaCalibration::new(0.0).unwrap().g_tilde_ln(ln_x);
        let near = KappaCalibration::new(1e-6).unwrap().g_tilde_ln(ln_x);
        prop_assert!((at_zero - near).abs() < 1e-5);
    }

    #[test]
    fn root_is_stable_under_bracket_widening(target in -3.0..3.0f64, wl in 0.0..50.0f64, wh in 0.0..50.0f64) {
        let mut f = |x: f64| x.sinh() * 0.1 + x - target;
        let tol = Tolerance::new(1e-13, 1e-13, 200).unwrap();
        let b1 = Bracket::from_fn(&mut f, -5.0, 5.0).unwrap();
        let narrow = find_root_monotone(&mut f, b1, tol).unwrap();
        let b2 = Bracket::from_fn(&mut f, -5.0 - wl, 5.0 + wh).unwrap();
        let wide = find_root_monotone(&mut f, b2, tol).unwrap();
        prop_assert!((narrow - wide).abs() < 1e-11);
    }

    #[test]
    fn posterior_mean_is_shift_equivariant(which in 0u8..3, n in 1u64..50, y in -20.0..20.0f64, shift in -50.0..50.0f64) {
        let p = fast_prior(which, 0.0, 1.0);
        let moved = p.with_location(p.location() + shift).unwrap();
        let a = posterior_mean(&p, &unit(), &SufficientStat::new(n, y).unwrap()).unwrap();
        let b = posterior_mean(&moved, &unit(), &SufficientStat::new(n, y + shift).unwrap()).unwrap();
        prop_assert!((a + shift - b).abs() < 1e-8 * (1.0 + shift.abs()));
    }
}

#[test]
fn tweedie_matches_direct_posterior_expectation() {
    let priors = [
        Prior::gaussian(0.5, 1.0).unwrap(),
        Prior::laplace(0.0, 0.3).unwrap(),
        Prior::student_t(5.0, 0.0, 1.0).unwrap(),
        Prior::horseshoe(0.0, 1.0).unwrap(),
        Prior::gaussian_mixture(vec![0.8, 0.2], vec![-3.0, 3.0], vec![0.5, 0.5]).unwrap(),
    ];
    let model = unit();
    let tol = Tolerance::new(1e-14, 1e-11, 400).unwrap();
    for p in &priors {
        for &(n, y) in &[(1u64, 0.3), (4, 2.5), (10, -6.0)] {
            let stat = SufficientStat::new(n, y).unwrap();
            let w = |t: f64| {
                let lp = p.ln_density(t).unwrap();
                if lp.is_infinite() {
                    0.0
                } else {
                    (model.ln_mean_density(n, y, t) + lp).exp()
                }
            };
            let sd = model.mean_sd(n);
            let breaks = [y, y - 8.0 * sd, y + 8.0 * sd, p.location(), -3.0, 3.0];
            // the horseshoe pole is integrable, so a small inner scale suffices
            let z = integrate_line_with_breaks(w, &breaks, 0.1, tol).unwrap().value;
            let m1 = integrate_line_with_breaks(|t| t * w(t), &breaks, 0.1, tol).unwrap().value;
            let pm = posterior_mean(p, &model, &stat).unwrap();
            assert!((pm - m1 / z).abs() < 1e-6, "{:?} n={n} y={y}: {pm} vs {}", p.kind(), m1 / z);
        }
    }
}

#[test]
fn disconnected_mixture_region() {
    let p = Prior::gaussian_mixture(vec![0.8, 0.2], vec![-10.0, 10.0], vec![0.01, 0.01]).unwrap();
    let q = CsQuery::new(&p, unit(), 0.4, SufficientStat::new(1, 1.5).unwrap(), CsMethod::EvilleGrid).unwrap();
    let r = evcs(&q).unwrap();
    assert!(r.len() >= 2);
    assert!(r.contains(posterior_mean(&p, &unit(), &q.stat()).unwrap()));
}
