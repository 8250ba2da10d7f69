use proptest::prelude::*;

use mahonian::colored::{
    parse_word, ColoredLetter, ColoredPermutation, ColoredSequence, GroupParams,
};
use mahonian::qpoly::{
    gauss_forward, gauss_inversion, rational_check, IntPolynomial, RationalTerm,
};
use mahonian::statistics as stats;

fn poly(max_len: usize) -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-9i64..=9, 0..=max_len).prop_map(|c| IntPolynomial::from_i64s(&c))
}

fn colored_permutation(max_c: u32, max_n: usize) -> impl Strategy<Value = ColoredPermutation> {
    (1..=max_c, 0..=max_n).prop_flat_map(|(c, n)| {
        let values = Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle();
        let colors = prop::collection::vec(0..c, n);
        (values, colors).prop_map(move |(v, t)| {
            let letters = v
                .into_iter()
                .zip(t)
                .map(|(v, t)| ColoredLetter::new(v, t))
                .collect();
            ColoredPermutation::new(c, letters).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn gauss_roundtrip(g in prop::collection::vec(poly(6), 0..=6), c in 1usize..=3) {
        prop_assert_eq!(gauss_inversion(&gauss_forward(&g, c), c), g);
    }

    #[test]
    fn negation_is_a_ring_map(a in poly(8), b in poly(8)) {
        prop_assert_eq!((&a * &b).substitute_neg(), &a.substitute_neg() * &b.substitute_neg());
        prop_assert_eq!((&a + &b).substitute_neg(), &a.substitute_neg() + &b.substitute_neg());
    }

    #[test]
    fn rational_check_ignores_extra_clearing(
        lhs in poly(6),
        cores in prop::collection::vec((any::<bool>(), poly(4), 0u32..=3), 0..=3),
    ) {
        let terms: Vec<_> = cores.into_iter().map(|(s, c, e)| RationalTerm::new(s, c, e)).collect();
        prop_assert_eq!(rational_check(&lhs, &terms, 3).unwrap(), rational_check(&lhs, &terms, 4).unwrap());
    }

    #[test]
    fn rational_check_accepts_exact_quotients(core in poly(5), e in 0u32..=3, negative in any::<bool>()) {
        // core·(1+q)^e·((1-q)/(1+q))^e = core·(1-q)^e
        let lhs = &core * &IntPolynomial::from_i64s(&[1, -1]).pow(e);
        let lhs = if negative { -lhs } else { lhs };
        let term = RationalTerm::new(negative, &core * &IntPolynomial::from_i64s(&[1, 1]).pow(e), e);
        prop_assert!(rational_check(&lhs, &[term], e).unwrap());
    }

    #[test]
    fn parse_format_roundtrip(p in colored_permutation(5, 7)) {
        let text = p.to_string();
        prop_assert_eq!(parse_word(&text, p.params()).unwrap(), p);
    }

    #[test]
    fn inverse_is_an_involution(p in colored_permutation(5, 7)) {
        let inv = p.inverse();
        prop_assert_eq!(inv.inverse(), p.clone());
        prop_assert_eq!(inv.is_derangement(), p.is_derangement());
        prop_assert_eq!(stats::inv(&inv.underlying()), stats::inv(&p.underlying()));
        let c = p.params().colors;
        let negated: u64 = p.letters().iter().map(|l| ((c - l.color) % c) as u64).sum();
        prop_assert_eq!(stats::col(&inv), negated);
        // Inverting negates colors, so inv~ survives only when -t = t mod c.
        if c <= 2 {
            prop_assert_eq!(stats::inv_tilde(&inv), stats::inv_tilde(&p));
        }
    }

    #[test]
    fn parse_rejects_out_of_range_colors(p in colored_permutation(4, 5)) {
        let bigger = GroupParams::new(p.params().colors + 1, p.degree()).unwrap();
        prop_assert!(parse_word(&p.to_string(), bigger).is_ok());
        let top = p.params().colors - 1;
        if top > 0 && p.letters().iter().any(|l| l.color == top) {
            let smaller = GroupParams::new(top, p.degree()).unwrap();
            prop_assert!(parse_word(&p.to_string(), smaller).is_err());
        }
    }
}
