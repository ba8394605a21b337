use gswf_core::bfn::{inverse_walsh_transform, level_weights, walsh_transform, Spectrum};
use gswf_core::dist::{profile_probability, TripleDistribution};
use gswf_core::rationality::{noise_convolve_in_place, noise_operator_spectral, w_formula, w_oracle};
use gswf_core::{BooleanFunction, EvenProductDistribution, Gswf};
use proptest::prelude::*;

fn table(n: usize) -> impl Strategy<Value = BooleanFunction> {
    prop::collection::vec(any::<bool>(), 1usize << n)
        .prop_map(|bits| BooleanFunction::from_bits(&bits).unwrap())
}

fn triple(n: usize) -> impl Strategy<Value = Gswf> {
    (table(n), table(n), table(n)).prop_map(|(f, g, h)| Gswf::new(f, g, h).unwrap())
}

fn even() -> impl Strategy<Value = EvenProductDistribution> {
    (0.0..=1.0f64, 0.0..=1.0f64).prop_map(|(a, b)| {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        EvenProductDistribution::new(lo / 2.0, (hi - lo) / 2.0, (1.0 - hi) / 2.0).unwrap()
    })
}

fn general() -> impl Strategy<Value = TripleDistribution> {
    prop::array::uniform6(0.01..1.0f64).prop_map(|w| {
        let s: f64 = w.iter().sum();
        TripleDistribution::new(w.map(|x| x / s)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn formula_matches_oracle(t in (1usize..=4).prop_flat_map(triple), d in even()) {
        let a = w_formula(&t, &d).unwrap().w;
        let b = w_oracle(&t, &d.to_triple_distribution()).unwrap().w;
        prop_assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }

    #[test]
    fn w_is_a_probability(t in triple(3), d in general()) {
        let w = w_oracle(&t, &d).unwrap().w;
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&w));
    }

    #[test]
    fn parseval(f in table(5)) {
        let s = walsh_transform(&f);
        let total: f64 = level_weights(&s).iter().sum();
        prop_assert!((total - f.expectation()).abs() < 1e-12);
        prop_assert!((s.mean() - f.expectation()).abs() < 1e-12);
    }

    #[test]
    fn transform_round_trip(f in table(6)) {
        let back = inverse_walsh_transform(&walsh_transform(&f));
        for (x, v) in back.iter().enumerate() {
            prop_assert!((v - f64::from(u8::from(f.get(x as u64)))).abs() < 1e-12);
        }
    }

    #[test]
    fn hex_round_trip(f in table(5)) {
        let g = BooleanFunction::from_hex(5, &f.to_hex()).unwrap();
        prop_assert_eq!(f, g);
    }

    #[test]
    fn dual_is_an_involution(f in table(4)) {
        prop_assert_eq!(f.dual().dual(), f.clone());
        prop_assert_eq!(f.dual().weight(), (1u64 << 4) - f.weight());
    }

    #[test]
    fn noise_paths_agree(f in table(5), eps in -1.0..=1.0f64) {
        let spectral = inverse_walsh_transform(&noise_operator_spectral(&walsh_transform(&f), eps).unwrap());
        let mut direct = f.values();
        noise_convolve_in_place(&mut direct, eps).unwrap();
        for (a, b) in spectral.iter().zip(&direct) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn relabelling_alternatives_rotates_the_triple(t in triple(3), d in even()) {
        // (f, g, h) under d equals (g, h, f) under the rotated distribution
        let rotated = Gswf::new(t.g.clone(), t.h.clone(), t.f.clone()).unwrap();
        let a = w_formula(&t, &d).unwrap().w;
        let b = w_formula(&rotated, &d.rotated()).unwrap().w;
        prop_assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }

    #[test]
    fn profile_probabilities_sum_to_one(d in general()) {
        let bits = [(true, true, false), (false, true, true), (true, false, true),
                    (false, false, true), (true, false, false), (false, true, false)];
        let mut total = 0.0;
        for a in bits {
            for b in bits {
                total += profile_probability(&d, &[a, b]).unwrap();
            }
        }
        prop_assert!((total - 1.0).abs() < 1e-12);
    }
}
