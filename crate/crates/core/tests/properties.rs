use proptest::prelude::*;

use slarc::algebra::{scalar, AlgebraElement};
use slarc::grothendieck::{inner_product, parse_poly, Basis, PolyClass};
use slarc::linalg::SparseMatrix;
use slarc::{Diagram, Field, Flavor, PrimeField};

/// Keeps the lowest common number of set bits so both sides have equal width.
fn diagram(m: usize, n: usize, left: u32, right: u32) -> Diagram {
    let pick = |mask: u32, points: usize| -> Vec<usize> {
        (1..=points).filter(|p| mask & (1 << (p - 1)) != 0).collect()
    };
    let (mut l, mut r) = (pick(left, m), pick(right, n));
    let w = l.len().min(r.len());
    l.truncate(w);
    r.truncate(w);
    Diagram::validate(m, n, &l, &r).unwrap()
}

fn diagram_in(m: usize, n: usize) -> impl Strategy<Value = Diagram> {
    (any::<u32>(), any::<u32>()).prop_map(move |(a, b)| diagram(m, n, a, b))
}

fn any_diagram() -> impl Strategy<Value = Diagram> {
    (0usize..=6, 0usize..=6).prop_flat_map(|(m, n)| diagram_in(m, n))
}

fn composable_pair() -> impl Strategy<Value = (Diagram, Diagram)> {
    (0usize..=6, 0usize..=6, 0usize..=6).prop_flat_map(|(m, k, n)| (diagram_in(m, k), diagram_in(k, n)))
}

fn composable_triple() -> impl Strategy<Value = (Diagram, Diagram, Diagram)> {
    (0usize..=5, 0usize..=5, 0usize..=5, 0usize..=5)
        .prop_flat_map(|(a, b, c, d)| (diagram_in(a, b), diagram_in(b, c), diagram_in(c, d)))
}

fn element_in(flavor: Flavor, m: usize, n: usize) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((diagram_in(m, n), -3i64..=3), 0..4)
        .prop_map(move |terms| AlgebraElement::from_terms(flavor, terms.into_iter().map(|(d, c)| (d, scalar(c)))))
}

fn flavor() -> impl Strategy<Value = Flavor> {
    prop_oneof![Just(Flavor::Minus), Just(Flavor::Plus)]
}

fn element_quadruple() -> impl Strategy<Value = (AlgebraElement, AlgebraElement, AlgebraElement, AlgebraElement)> {
    (flavor(), 0usize..=3, 0usize..=3, 0usize..=3, 0usize..=3).prop_flat_map(|(f, a, b, c, d)| {
        (element_in(f, a, b), element_in(f, b, c), element_in(f, b, c), element_in(f, c, d))
    })
}

fn dense(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, cols), rows)
}

fn matrix(field: &PrimeField, d: &[Vec<i64>], cols: usize) -> SparseMatrix<u64> {
    let rows: Vec<Vec<u64>> = d.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
    SparseMatrix::from_dense(&rows, cols, field)
}

proptest! {
    #[test]
    fn width_is_submultiplicative((x, y) in composable_pair()) {
        let c = x.compose(&y).unwrap();
        prop_assert!(c.diagram.width() <= x.width().min(y.width()));
    }

    #[test]
    fn sarc_degree_is_additive_up_to_floating((x, y) in composable_pair()) {
        let c = x.compose(&y).unwrap();
        prop_assert_eq!(x.sarc_degree() + y.sarc_degree(), c.diagram.sarc_degree() + 2 * c.floating);
    }

    #[test]
    fn composition_is_associative((x, y, z) in composable_triple()) {
        let xy = x.compose(&y).unwrap();
        let left = xy.diagram.compose(&z).unwrap();
        let yz = y.compose(&z).unwrap();
        let right = x.compose(&yz.diagram).unwrap();
        prop_assert_eq!(&left.diagram, &right.diagram);
        prop_assert_eq!(xy.floating + left.floating, yz.floating + right.floating);
    }

    #[test]
    fn reflection_is_an_anti_involution((x, y) in composable_pair()) {
        prop_assert_eq!(x.reflect().reflect(), x.clone());
        let c = x.compose(&y).unwrap();
        let r = y.reflect().compose(&x.reflect()).unwrap();
        prop_assert_eq!(r.diagram, c.diagram.reflect());
        prop_assert_eq!(r.floating, c.floating);
    }

    #[test]
    fn iota_is_multiplicative((x, y) in composable_pair()) {
        let c = x.compose(&y).unwrap();
        let i = x.iota().compose(&y.iota()).unwrap();
        prop_assert_eq!(i.diagram, c.diagram.iota());
        prop_assert_eq!(i.floating, c.floating);
    }

    #[test]
    fn cabling_respects_composition((x, y) in composable_pair(), k in 1usize..=3) {
        let c = x.compose(&y).unwrap();
        let k_c = x.cable(k).unwrap().compose(&y.cable(k).unwrap()).unwrap();
        prop_assert_eq!(k_c.diagram, c.diagram.cable(k).unwrap());
        prop_assert_eq!(k_c.floating, k * c.floating);
        prop_assert_eq!(x.cable(k).unwrap().width(), k * x.width());
    }

    #[test]
    fn stacking_interchanges_with_composition(
        (a, c) in composable_pair(),
        (b, d) in composable_pair(),
    ) {
        let lhs = Diagram::stack(&a, &b).unwrap().compose(&Diagram::stack(&c, &d).unwrap()).unwrap();
        let ac = a.compose(&c).unwrap();
        let bd = b.compose(&d).unwrap();
        prop_assert_eq!(lhs.diagram, Diagram::stack(&ac.diagram, &bd.diagram).unwrap());
        prop_assert_eq!(lhs.floating, ac.floating + bd.floating);
    }

    #[test]
    fn identities_are_units(x in any_diagram()) {
        let l = Diagram::identity(x.left_count()).compose(&x).unwrap();
        let r = x.compose(&Diagram::identity(x.right_count())).unwrap();
        prop_assert_eq!((&l.diagram, l.floating), (&x, 0));
        prop_assert_eq!((&r.diagram, r.floating), (&x, 0));
    }

    #[test]
    fn generators_factor_diagrams(x in any_diagram()) {
        let factors = x.factor();
        prop_assert!(factors.iter().all(Diagram::is_generator));
        let mut acc = Diagram::identity(x.left_count());
        for g in &factors {
            let c = acc.compose(g).unwrap();
            prop_assert_eq!(c.floating, 0);
            acc = c.diagram;
        }
        prop_assert_eq!(acc, x);
    }

    #[test]
    fn diagram_json_round_trips(x in any_diagram()) {
        let s = serde_json::to_string(&x).unwrap();
        let back: Diagram = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn element_product_is_associative_and_bilinear((x, y, y2, z) in element_quadruple()) {
        let left = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let right = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let sum = x.multiply(&y.add(&y2).unwrap()).unwrap();
        prop_assert_eq!(sum, x.multiply(&y).unwrap().add(&x.multiply(&y2).unwrap()).unwrap());
        prop_assert_eq!(
            x.multiply(&y).unwrap().reflect(),
            y.reflect().multiply(&x.reflect()).unwrap()
        );
    }

    #[test]
    fn rank_is_transpose_invariant_and_submultiplicative(
        a in dense(4, 5),
        b in dense(5, 3),
    ) {
        let field = PrimeField::default();
        let ma = matrix(&field, &a, 5);
        let mb = matrix(&field, &b, 3);
        let ra = ma.rank(&field);
        prop_assert_eq!(ra, ma.transpose().rank(&field));
        let prod = ma.mul(&mb, &field);
        prop_assert!(prod.rank(&field) <= ra.min(mb.rank(&field)));
        prop_assert_eq!(SparseMatrix::identity(4, &field).mul(&ma, &field), ma);
    }

    #[test]
    fn k0_basis_change_round_trips(coeffs in prop::collection::vec(-5i64..=5, 0..7)) {
        let f = PolyClass::from_i64(Basis::Projective, &coeffs);
        let g = f.convert(Basis::Standard);
        prop_assert_eq!(g.convert(Basis::Projective), f.convert(Basis::Projective));
        prop_assert_eq!(parse_poly(&f.render()).unwrap().convert(Basis::Projective), f.convert(Basis::Projective));
        let g = PolyClass::from_i64(Basis::Standard, &coeffs[..coeffs.len() / 2]);
        prop_assert_eq!(inner_product(&f, &g), inner_product(&g, &f));
        for m in 0..4 {
            let expected: num_bigint::BigInt = (0..coeffs.len())
                .map(|n| f.coeff(n) * num_bigint::BigInt::from(slarc::combinat::binomial(n + m, m)))
                .sum();
            prop_assert_eq!(inner_product(&f, &PolyClass::projective(m)), expected);
        }
    }
}
