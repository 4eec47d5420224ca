//! Explicit resolutions: `M_n` by projectives, `L_k` by standards, the
//! bicomplex whose total complex resolves `L_n` by projectives, and the
//! tensor powers of the resolution of `M_1`.
//!
//! Summands are labelled by subsets written `{i_1,...,i_m}`; the bicomplex
//! labels are `I|J`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use thiserror::Error;

use crate::algebra::{scalar, AlgebraElement, Flavor};
use crate::combinat::{format_set, position_in, remove_and_shift, subsets};
use crate::complexes::{Bicomplex, ComplexError, DiagramComplex, DiffMatrix, Summand};
use crate::diagram::{Diagram, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("constructed differentials do not square to zero: {0}")]
    SignConvention(String),
    #[error("complexes are not isomorphic: {0}")]
    NotIsomorphic(String),
}

/// Every sign used by the constructions below.
pub mod signs {
    /// `P^{I}_{n−m} → P^{I∖{i_l}}_{n−m+1}` in the resolution of `M_n`.
    pub fn standard(l: usize) -> i64 {
        alternating(l - 1)
    }

    /// `M^{I}_{k+m} → M^{I_{−l}}_{k+m−1}` in the resolution of `L_k`.
    pub fn simple_by_standard(l: usize) -> i64 {
        alternating(l)
    }

    /// Horizontal map of the bicomplex removing the element `i_p` of `I`
    /// while the vertical label has `k` elements. The vertical maps use
    /// [`standard`]; the factor `(−1)^k` makes every square anticommute.
    pub fn bicomplex_horizontal(i_p: usize, k: usize) -> i64 {
        alternating(i_p - 1) * alternating(k)
    }

    fn alternating(e: usize) -> i64 {
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

fn signed(d: Diagram, sign: i64) -> AlgebraElement {
    AlgebraElement::term(Flavor::Minus, d, scalar(sign))
}

fn index_of(sets: &[Vec<usize>]) -> HashMap<Vec<usize>, usize> {
    sets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()
}

fn complement(n: usize, set: &[usize]) -> Vec<usize> {
    (1..=n).filter(|x| !set.contains(x)).collect()
}

/// `b^p_{r}` for the map removing `i` from `set`: `p` is the position of
/// `i` among the complement of `set` in `{1..n}` together with `i`.
fn right_sarc_for(n: usize, set: &[usize], i: usize) -> Diagram {
    let mut comp = complement(n, set);
    comp.push(i);
    comp.sort_unstable();
    let p = position_in(&comp, i).expect("element present");
    Diagram::elementary(comp.len(), p, Side::Right).expect("valid index")
}

fn ensure_d2(c: &DiagramComplex) -> Result<(), ResolutionError> {
    let failures = c.verify_d2();
    if let Some(f) = failures.first() {
        return Err(ResolutionError::SignConvention(format!(
            "{} failing composites, first at degree {} entry ({},{}): {}",
            failures.len(),
            f.degree,
            f.row,
            f.col,
            f.value
        )));
    }
    Ok(())
}

/// The projective resolution of `M_n`: term `m` is `⊕_{|I|=m} P_{n−m}^I`
/// over `I ⊆ {1..n}`, and `P^I → P^{I∖{i_l}}` is `(−1)^{l−1}` times right
/// multiplication by `b^p_{n−m+1}`.
pub fn resolve_standard(n: usize) -> Result<DiagramComplex, ResolutionError> {
    let labels: Vec<Vec<Vec<usize>>> = (0..=n).map(|m| subsets(n, m)).collect();
    let terms = labels
        .iter()
        .enumerate()
        .map(|(m, ls)| {
            ls.iter()
                .map(|i| Summand::projective(n - m, format_set(i)))
                .collect()
        })
        .collect();
    let mut diffs = Vec::with_capacity(n);
    for m in 1..=n {
        let target = index_of(&labels[m - 1]);
        let mut d = DiffMatrix::zero(labels[m].len(), labels[m - 1].len());
        for (row, set) in labels[m].iter().enumerate() {
            for (l, &i) in set.iter().enumerate() {
                let rest: Vec<usize> = set.iter().copied().filter(|&x| x != i).collect();
                let beta = right_sarc_for(n, set, i);
                d.add_entry(row, target[&rest], signed(beta, signs::standard(l + 1)));
            }
        }
        diffs.push(d);
    }
    let c = DiagramComplex::new(terms, diffs)?.with_augmentation(format!("M_{n}"));
    ensure_d2(&c)?;
    Ok(c)
}

/// Resolution of `L_k` by standard modules, through degree `t_max`: term
/// `m` is `⊕_{|I|=m} M_{k+m}^I` over `I ⊆ {1..k+m}`, and
/// `M^I → M^{I_{−l}}` multiplies on the right by `^{i_l}b_{k+m−1}`.
pub fn resolve_simple_by_standard(k: usize, t_max: usize) -> Result<DiagramComplex, ResolutionError> {
    let labels: Vec<Vec<Vec<usize>>> = (0..=t_max).map(|m| subsets(k + m, m)).collect();
    let terms = labels
        .iter()
        .enumerate()
        .map(|(m, ls)| {
            ls.iter()
                .map(|i| Summand::standard(k + m, format_set(i)))
                .collect()
        })
        .collect();
    let mut diffs = Vec::with_capacity(t_max);
    for m in 1..=t_max {
        let target = index_of(&labels[m - 1]);
        let mut d = DiffMatrix::zero(labels[m].len(), labels[m - 1].len());
        for (row, set) in labels[m].iter().enumerate() {
            for (l, &i) in set.iter().enumerate() {
                let beta = Diagram::elementary(k + m, i, Side::Left).expect("valid index");
                let col = target[&remove_and_shift(set, i)];
                d.add_entry(row, col, signed(beta, signs::simple_by_standard(l + 1)));
            }
        }
        diffs.push(d);
    }
    let c = DiagramComplex::new(terms, diffs)?.with_augmentation(format!("L_{k}"));
    ensure_d2(&c)?;
    Ok(c)
}

/// Label `I|J` of a bicomplex summand.
pub fn bicomplex_label(i: &[usize], j: &[usize]) -> String {
    format!("{}|{}", format_set(i), format_set(j))
}

/// The bicomplex resolving `L_n`, restricted to `m + k ≤ t_max`. Column `m`
/// is the resolution of `M_{n+m}` labelled by `J`, repeated for each
/// `I ⊆ {1..n+m}` with `|I| = m`.
pub fn build_bicomplex(n: usize, t_max: usize) -> Bicomplex {
    let mut grid = BTreeMap::new();
    let mut labels: HashMap<(usize, usize), HashMap<(Vec<usize>, Vec<usize>), usize>> = HashMap::new();
    for m in 0..=t_max {
        let top = n + m;
        for k in 0..=(t_max - m).min(top) {
            let mut list = Vec::new();
            let mut idx = HashMap::new();
            for i in subsets(top, m) {
                for j in subsets(top, k) {
                    idx.insert((i.clone(), j.clone()), list.len());
                    list.push(Summand::projective(top - k, bicomplex_label(&i, &j)));
                }
            }
            grid.insert((m, k), list);
            labels.insert((m, k), idx);
        }
    }
    let mut horizontal = BTreeMap::new();
    let mut vertical = BTreeMap::new();
    for (&(m, k), idx) in &labels {
        let top = n + m;
        let rows = idx.len();
        if k >= 1 {
            let tgt = &labels[&(m, k - 1)];
            let mut d = DiffMatrix::zero(rows, tgt.len());
            for ((i, j), &row) in idx {
                for (l, &jl) in j.iter().enumerate() {
                    let rest: Vec<usize> = j.iter().copied().filter(|&x| x != jl).collect();
                    let beta = right_sarc_for(top, j, jl);
                    d.add_entry(row, tgt[&(i.clone(), rest)], signed(beta, signs::standard(l + 1)));
                }
            }
            vertical.insert((m, k), d);
        }
        if m >= 1 {
            if let Some(tgt) = labels.get(&(m - 1, k)) {
                let mut d = DiffMatrix::zero(rows, tgt.len());
                for ((i, j), &row) in idx {
                    let comp = complement(top, j);
                    for &ip in i.iter().filter(|x| !j.contains(x)) {
                        let q = position_in(&comp, ip).expect("in complement");
                        let beta = Diagram::elementary(comp.len(), q, Side::Left).expect("valid index");
                        let i2 = remove_and_shift(i, ip);
                        let j2: Vec<usize> = j.iter().map(|&x| if x > ip { x - 1 } else { x }).collect();
                        d.add_entry(row, tgt[&(i2, j2)], signed(beta, signs::bicomplex_horizontal(ip, k)));
                    }
                }
                horizontal.insert((m, k), d);
            }
        }
    }
    Bicomplex {
        grid,
        horizontal,
        vertical,
    }
}

/// Total complex of the bicomplex through degree `t_max`: a projective
/// resolution of `L_n`, exact in degrees below `t_max`.
pub fn resolve_simple_projective(n: usize, t_max: usize) -> Result<DiagramComplex, ResolutionError> {
    let b = build_bicomplex(n, t_max);
    let report = b.verify();
    if !report.passed() {
        return Err(ResolutionError::SignConvention(format!("{report:?}")));
    }
    Ok(b.total(t_max)?.with_augmentation(format!("L_{n}")))
}

/// `0 → P_0 → P_1 → 0`, the minimal resolution of `M_1`.
pub fn m1_resolution() -> DiagramComplex {
    let mut d = DiffMatrix::zero(1, 1);
    d.add_entry(
        0,
        0,
        AlgebraElement::basis(
            Flavor::Minus,
            Diagram::elementary(1, 1, Side::Right).expect("valid index"),
        ),
    );
    DiagramComplex::new(
        vec![vec![Summand::projective(1, "1")], vec![Summand::projective(0, "0")]],
        vec![d],
    )
    .expect("well-formed")
    .with_augmentation("M_1")
}

/// `n`-fold tensor power of [`m1_resolution`], first factor on top.
pub fn m1_tensor_power(n: usize) -> Result<DiagramComplex, ResolutionError> {
    let base = m1_resolution();
    if n == 0 {
        return Ok(DiagramComplex::single(Summand::projective(0, "")));
    }
    let mut acc = base.clone();
    for _ in 1..n {
        acc = acc.tensor(&base)?;
    }
    Ok(acc.with_augmentation(format!("M_{n}")))
}

/// Matches summands of `m1_tensor_power(n)` to those of
/// `resolve_standard(n)`: factor `j` (counted from the top) sits at
/// position `n + 1 − j`, and `I` collects the positions whose factor
/// contributes `P_0`.
pub fn tensor_power_label_map(n: usize, power: &DiagramComplex, standard: &DiagramComplex) -> Vec<Vec<usize>> {
    power
        .terms()
        .iter()
        .enumerate()
        .map(|(t, term)| {
            let index: HashMap<&str, usize> = standard
                .term(t)
                .iter()
                .enumerate()
                .map(|(i, s)| (s.label.as_str(), i))
                .collect();
            term.iter()
                .map(|s| {
                    let mut set: Vec<usize> = s
                        .label
                        .split('|')
                        .enumerate()
                        .filter(|(_, c)| *c == "0")
                        .map(|(j, _)| n - j)
                        .collect();
                    set.sort_unstable();
                    index[format_set(&set).as_str()]
                })
                .collect()
        })
        .collect()
}

/// Finds signs `ε` with `ε_s · B[σs][σu] = ε_u · A[s][u]` for every
/// differential entry, which makes `a ↦ ε_s a` a chain isomorphism from `a`
/// to `b` along the summand bijection `sigma`. Returns the signs per degree.
pub fn signed_isomorphism(
    a: &DiagramComplex,
    b: &DiagramComplex,
    sigma: &[Vec<usize>],
) -> Result<Vec<Vec<i64>>, ResolutionError> {
    let fail = |m: String| Err(ResolutionError::NotIsomorphic(m));
    if a.len() != b.len() {
        return fail(format!("lengths {} and {}", a.len(), b.len()));
    }
    for t in 0..a.len() {
        let mut seen = vec![false; b.term(t).len()];
        if sigma[t].len() != a.term(t).len() || seen.len() != a.term(t).len() {
            return fail(format!("degree {t} has different numbers of summands"));
        }
        for (s, &img) in sigma[t].iter().enumerate() {
            if seen[img] || a.term(t)[s].n != b.term(t)[img].n {
                return fail(format!("degree {t}: summand {s} is not matched bijectively"));
            }
            seen[img] = true;
        }
    }
    // ratio[t][(s, u)] = +1 if A[s][u] = B[σs][σu], −1 if they are negatives
    let mut adjacency: HashMap<(usize, usize), Vec<((usize, usize), i64)>> = HashMap::new();
    let neg = scalar(-1);
    for t in 1..a.len() {
        let da = a.differential(t).expect("differential");
        let db = b.differential(t).expect("differential");
        if da.entries.len() != db.entries.len() {
            return fail(format!("degree {t}: different numbers of nonzero entries"));
        }
        for ((s, u), e) in &da.entries {
            let Some(f) = db.get(sigma[t][*s], sigma[t - 1][*u]) else {
                return fail(format!("degree {t}: entry ({s},{u}) has no counterpart"));
            };
            let r = if e == f {
                1
            } else if &e.scale(&neg) == f {
                -1
            } else {
                return fail(format!("degree {t}: entries ({s},{u}) differ by more than a sign"));
            };
            adjacency.entry((t, *s)).or_default().push(((t - 1, *u), r));
            adjacency.entry((t - 1, *u)).or_default().push(((t, *s), r));
        }
    }
    let mut eps: Vec<Vec<i64>> = a.terms().iter().map(|t| vec![0; t.len()]).collect();
    for t in 0..a.len() {
        for s in 0..a.term(t).len() {
            if eps[t][s] != 0 {
                continue;
            }
            eps[t][s] = 1;
            let mut queue = VecDeque::from([(t, s)]);
            while let Some(node) = queue.pop_front() {
                let e = eps[node.0][node.1];
                for &(other, r) in adjacency.get(&node).map_or(&[][..], Vec::as_slice) {
                    let want = e * r;
                    match eps[other.0][other.1] {
                        0 => {
                            eps[other.0][other.1] = want;
                            queue.push_back(other);
                        }
                        v if v != want => {
                            return fail(format!("inconsistent signs around summand {node:?}"));
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    Ok(eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::binomial;
    use crate::field::{PrimeField, Rationals};
    use crate::grothendieck::{Basis, PolyClass};

    #[test]
    fn standard_resolution_small() {
        let r1 = resolve_standard(1).unwrap();
        assert_eq!(r1.term(1)[0].n, 0);
        assert_eq!(
            r1.differential(1).unwrap().get(0, 0).unwrap(),
            &AlgebraElement::basis(Flavor::Minus, Diagram::elementary(1, 1, Side::Right).unwrap())
        );
        let r2 = resolve_standard(2).unwrap();
        assert_eq!(r2.euler_class(), PolyClass::from_i64(Basis::Projective, &[1, -2, 1]));
        assert_eq!(r2.homology(3, &Rationals), vec![3, 0, 0]);
        let r3 = resolve_standard(3).unwrap();
        assert_eq!(r3.homology(5, &Rationals), vec![10, 0, 0, 0]);
        assert!(r3.check_linearity());
    }

    #[test]
    fn worked_example_of_the_differential() {
        // summand {1,3,4,5} of the resolution of M_7, removing its first element
        let r = resolve_standard(7).unwrap();
        let row = r.term(4).iter().position(|s| s.label == "{1,3,4,5}").unwrap();
        let col = r.term(3).iter().position(|s| s.label == "{3,4,5}").unwrap();
        let e = r.differential(4).unwrap().get(row, col).unwrap();
        let expected = Diagram::elementary(4, 1, Side::Right).unwrap();
        assert_eq!(e, &AlgebraElement::basis(Flavor::Minus, expected));
    }

    #[test]
    fn sign_mutation_is_detected() {
        let r = resolve_standard(2).unwrap();
        let bad = r.with_entry_negated(2, 0, 0);
        let failures = bad.verify_d2();
        assert_eq!(failures.len(), 1);
        assert_eq!((failures[0].row, failures[0].col), (0, 0));
    }

    #[test]
    fn simple_by_standard() {
        let c = resolve_simple_by_standard(0, 4).unwrap();
        assert!(c.terms().iter().all(|t| t.len() == 1));
        let c5 = resolve_simple_by_standard(5, 3).unwrap();
        let row = c5.term(3).iter().position(|s| s.label == "{3,6,8}").unwrap();
        let col = c5.term(2).iter().position(|s| s.label == "{5,7}").unwrap();
        assert!(c5.differential(3).unwrap().get(row, col).is_some());
        for k in 0..3 {
            let c = resolve_simple_by_standard(k, 7 - k).unwrap();
            for p in 0..=6 {
                let h = c.homology(p, &Rationals);
                let expected: Vec<usize> = (0..h.len()).map(|t| usize::from(t == 0 && p == k)).collect();
                assert_eq!(h, expected, "k={k} p={p}");
            }
        }
    }

    #[test]
    fn bicomplex_squares_anticommute() {
        for n in 0..3 {
            let b = build_bicomplex(n, 4);
            let report = b.verify();
            assert!(report.passed(), "n={n}: {report:?}");
        }
        let b = build_bicomplex(1, 3);
        let total = b.total(3).unwrap();
        assert_eq!(total.term_profile(1), BTreeMap::from([(0, 1), (2, 2)]));
        assert_eq!(total.term_profile(0), BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn simple_projective_resolution_is_exact() {
        let f = PrimeField::default();
        for n in 0..3 {
            let c = resolve_simple_projective(n, 4).unwrap();
            assert!(c.verify_d2().is_empty());
            for p in 0..=5 {
                let h = c.homology(p, &f);
                assert_eq!(h[0], usize::from(p == n), "n={n} p={p}");
                assert!(h[1..4].iter().all(|&x| x == 0), "n={n} p={p}: {h:?}");
            }
        }
    }

    #[test]
    fn tensor_powers_match_standard_resolutions() {
        for n in 1..5 {
            let power = m1_tensor_power(n).unwrap();
            let standard = resolve_standard(n).unwrap();
            let sigma = tensor_power_label_map(n, &power, &standard);
            signed_isomorphism(&power, &standard, &sigma).unwrap();
            for m in 0..=n {
                assert_eq!(power.term(m).len() as u64, binomial(n, m));
            }
        }
    }
}
