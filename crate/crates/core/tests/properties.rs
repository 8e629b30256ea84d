use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use ellipta::exactpoly::{FormalSeries, MultiPoly, UniPoly};
use ellipta::gammakit::{
    gamma_expand, is_alternatingly_increasing, is_bi_gamma_positive, is_gamma_positive,
    is_symmetric, is_unimodal, sym_decompose, GammaVector,
};
use ellipta::grammar::Grammar;

fn uni(max_deg: usize, bound: i64) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-bound..=bound, 0..=max_deg + 1).prop_map(|c| UniPoly::from_i64s(&c))
}

fn multi(alphabet: Arc<[String]>, max_exp: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    let k = alphabet.len();
    prop::collection::vec((prop::collection::vec(0..=max_exp, k), -20i64..=20), 0..=max_terms)
        .prop_map(move |terms| {
            let mut p = MultiPoly::zero_on(alphabet.clone());
            for (e, c) in terms {
                p.add_term(e, BigInt::from(c));
            }
            p
        })
}

fn letters(names: &[&str]) -> Arc<[String]> {
    names.iter().map(|s| s.to_string()).collect()
}

/// A polynomial symmetric about `n`: mirror a random half.
fn symmetric(n: usize, bound: i64) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-bound..=bound, n / 2 + 1).prop_map(move |half| {
        let mut c = vec![0i64; n + 1];
        for (k, v) in half.iter().enumerate() {
            c[k] = *v;
            c[n - k] = *v;
        }
        UniPoly::from_i64s(&c)
    })
}

fn nonneg_gamma(center: usize) -> impl Strategy<Value = GammaVector> {
    prop::collection::vec(0i64..=50, center / 2 + 1)
        .prop_map(move |g| GammaVector::from_i64s(center, &g).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn uni_mul_commutative_and_associative(
        f in uni(40, 1_000_000), g in uni(40, 1_000_000), h in uni(40, 1_000_000)
    ) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }

    #[test]
    fn sym_decompose_recombines(f in uni(12, 1000), extra in 0usize..3) {
        let n = f.degree().unwrap_or(0) + extra;
        let d = sym_decompose(&f, n).unwrap();
        prop_assert_eq!(&d.a + &d.b.shift(1), f);
        prop_assert_eq!(d.a.reverse(n).unwrap(), d.a.clone());
        if n == 0 {
            prop_assert!(d.b.is_zero());
        } else {
            prop_assert_eq!(d.b.reverse(n - 1).unwrap(), d.b.clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reverse_is_an_involution(f in uni(20, 1000), extra in 0usize..5) {
        let n = f.degree().unwrap_or(0) + extra;
        prop_assert_eq!(f.reverse(n).unwrap().reverse(n).unwrap(), f);
    }

    #[test]
    fn partial_obeys_leibniz(
        f in multi(letters(&["x", "y", "z"]), 4, 6),
        g in multi(letters(&["x", "y", "z"]), 4, 6),
    ) {
        for v in ["x", "y", "z"] {
            let lhs = f.mul(&g).unwrap().partial(v).unwrap();
            let rhs = f.partial(v).unwrap().mul(&g).unwrap()
                .add(&f.mul(&g.partial(v).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn substitution_is_multiplicative(
        f in multi(letters(&["p", "q"]), 3, 5),
        g in multi(letters(&["p", "q"]), 3, 5),
        ip in uni(3, 5),
        iq in uni(3, 5),
    ) {
        let asg = BTreeMap::from([("p".to_string(), ip), ("q".to_string(), iq)]);
        let lhs = f.mul(&g).unwrap().substitute(&asg).unwrap();
        let rhs = &f.substitute(&asg).unwrap() * &g.substitute(&asg).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn constant_series_multiply_like_polynomials(f in uni(10, 100), g in uni(10, 100), order in 0usize..6) {
        let a = FormalSeries::constant(order, f.clone());
        let b = FormalSeries::constant(order, g.clone());
        prop_assert_eq!(a.mul(&b).unwrap(), FormalSeries::constant(order, &f * &g));
    }

    #[test]
    fn gamma_expansion_round_trips(n in 0usize..14, seed in prop::collection::vec(-30i64..=30, 8)) {
        let g = GammaVector::from_i64s(n, &seed[..=n / 2]).unwrap();
        let f = g.reconstruct();
        prop_assert!(is_symmetric(&f, n).unwrap());
        prop_assert_eq!(gamma_expand(&f, n).unwrap(), g);
    }

    #[test]
    fn gamma_positive_implies_symmetric_and_unimodal(n in 0usize..12, g in (0usize..12).prop_flat_map(nonneg_gamma)) {
        let f = g.reconstruct();
        let c = g.center();
        prop_assert!(is_gamma_positive(&f, c).positive);
        prop_assert!(is_symmetric(&f, c).unwrap());
        prop_assert!(is_unimodal(&f));
        // Material conditional on an arbitrary center as well.
        if f.degree().unwrap_or(0) <= n && is_gamma_positive(&f, n).positive {
            prop_assert!(is_symmetric(&f, n).unwrap() && is_unimodal(&f));
        }
    }

    #[test]
    fn bi_gamma_positive_implies_alternating_increase(
        ga in (1usize..12).prop_flat_map(nonneg_gamma),
        gb_seed in prop::collection::vec(0i64..=50, 6),
        noise in uni(8, 20),
    ) {
        let n = ga.center();
        let gb = GammaVector::from_i64s(n - 1, &gb_seed[..=(n - 1) / 2]).unwrap();
        let f = &ga.reconstruct() + &gb.reconstruct().shift(1);
        let v = is_bi_gamma_positive(&f, n);
        prop_assert!(v.holds);
        prop_assert!(is_alternatingly_increasing(&f, n));
        prop_assert!(is_unimodal(&f));
        let deg = noise.degree().unwrap_or(0);
        if is_bi_gamma_positive(&noise, deg).holds {
            prop_assert!(is_alternatingly_increasing(&noise, deg) && is_unimodal(&noise));
        }
    }

    #[test]
    fn decomposition_is_unique(
        (n, a, b) in (1usize..12).prop_flat_map(|n| (Just(n), symmetric(n, 100), symmetric(n - 1, 100)))
    ) {
        let f = &a + &b.shift(1);
        let d = sym_decompose(&f, n).unwrap();
        prop_assert_eq!(d.a, a);
        prop_assert_eq!(d.b, b);
    }
}

fn grammar_cases() -> Vec<Grammar> {
    vec![Grammar::schett_dumont(), Grammar::g1(), Grammar::g2()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivative_is_linear_and_leibniz(
        (which, f, h) in (0usize..3).prop_flat_map(|w| {
            let a = grammar_cases()[w].alphabet_arc();
            (Just(w), multi(a.clone(), 3, 4), multi(a, 3, 4))
        })
    ) {
        let g = &grammar_cases()[which];
        let d = |p: &MultiPoly| g.derive_once(p).unwrap();
        prop_assert_eq!(d(&f.add(&h).unwrap()), d(&f).add(&d(&h)).unwrap());
        let fh = f.mul(&h).unwrap();
        prop_assert_eq!(d(&fh), d(&f).mul(&h).unwrap().add(&f.mul(&d(&h)).unwrap()).unwrap());
    }
}

#[test]
fn g2_specializes_to_g1() {
    let (g1, g2) = (Grammar::g1(), Grammar::g2());
    let target = g1.alphabet_arc();
    let l = |v: &str| g1.letter(v).unwrap();
    let images = [("x", l("x")), ("a", l("a")), ("b", l("b")), ("c", l("c")), ("g", l("c")), ("h", l("c"))];
    let d1 = g1.iterates(&l("x"), 12).unwrap();
    let d2 = g2.iterates(&g2.letter("x").unwrap(), 12).unwrap();
    for n in 0..=12 {
        assert_eq!(d2[n].compose(target.clone(), &images).unwrap(), d1[n], "n = {n}");
    }
}

#[test]
fn g1_becomes_schett_dumont() {
    let (g1, sd) = (Grammar::g1(), Grammar::schett_dumont());
    let target = sd.alphabet_arc();
    let l = |v: &str| sd.letter(v).unwrap();
    let images = [
        ("x", l("x")),
        ("a", l("y").pow(2).unwrap()),
        ("b", l("z").pow(2).unwrap()),
        ("c", l("y").mul(&l("z")).unwrap()),
    ];
    let d1 = g1.iterates(&g1.letter("x").unwrap(), 12).unwrap();
    let dsd = sd.iterates(&l("x"), 12).unwrap();
    for n in 0..=12 {
        assert_eq!(d1[n].compose(target.clone(), &images).unwrap(), dsd[n], "n = {n}");
    }
}

#[test]
fn schett_dumont_parity_shape() {
    let sd = Grammar::schett_dumont();
    for (n, d) in sd.iterates(&sd.letter("x").unwrap(), 14).unwrap().iter().enumerate() {
        for (e, c) in d.terms() {
            let want = if n % 2 == 0 { [1, 0, 0] } else { [0, 1, 1] };
            let got = [e[0] % 2, e[1] % 2, e[2] % 2];
            assert_eq!(got, want, "n = {n}, term {c} {e:?}");
            assert!(*c > BigInt::from(0));
        }
    }
}
