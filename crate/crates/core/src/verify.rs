//! The verification harness behind `slarc verify` and the acceptance suite.
//!
//! Every check compares an expected string with an actual one, so reports
//! are plain data. Checks run in parallel; reports are sorted by id.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{AlgebraElement, Flavor};
use crate::aplus::{decompose_projective_plus, hom_dim_plus, idempotent_suite, k0_plus_class};
use crate::combinat::binomial;
use crate::complexes::DiagramComplex;
use crate::diagram::{enumerate_basis, enumerate_widths, Diagram};
use crate::field::Field;
use crate::functors::{
    cable_standard_iso, cable_standard_report, derived_fk_standard, derived_ind_report, ind_projective_report,
    ind_simple_dims, ind_standard_report, interchange_check, k0_comparison, res_report, s_count,
    s_count_by_selection, tensor_resolutions_report, weak_adjointness_check, K0Functor, ResCase,
};
use crate::grothendieck::{Basis, PolyClass};
use crate::homalg::{
    bgg_check, cartan_matrix, ext_simple_simple_l0, ext_standard_simple, ext_standard_standard,
    homological_dimension_standard,
};
use crate::modules::{
    check_isomorphism, dims, filtration_layer, window_basis, Cabled, Cokernel, DiagramModule, ModuleRef,
    Presentation, Restricted, Simple,
};
use crate::resolutions::{
    build_bicomplex, m1_tensor_power, resolve_simple_by_standard, resolve_simple_projective, resolve_standard,
    signed_isomorphism, tensor_power_label_map,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub parameters: Value,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    /// Wall time; left out of JSON so that reports are byte-identical.
    #[serde(skip)]
    pub elapsed: Duration,
}

fn check(id: impl Into<String>, parameters: Value, f: impl FnOnce() -> (String, String)) -> Check {
    let start = Instant::now();
    let (expected, actual) = f();
    Check {
        id: id.into(),
        parameters,
        status: if expected == actual { Status::Pass } else { Status::Fail },
        expected,
        actual,
        elapsed: start.elapsed(),
    }
}

fn show<T: fmt::Debug>(v: T) -> String {
    format!("{v:?}")
}

/// Size limits for every suite. [`Bounds::full`] holds the acceptance
/// bounds; [`Bounds::scaled`] shrinks them for quick runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub basis_max: usize,
    pub assoc_max: usize,
    pub assoc_element_max: usize,
    pub grading_max: usize,
    pub module_max: usize,
    pub standard_max_n: usize,
    pub standard_weight_max: usize,
    pub simple_max_k: usize,
    pub simple_weight_max: usize,
    pub bicomplex_max_n: usize,
    pub bicomplex_t: usize,
    pub bicomplex_exact_top: usize,
    pub bicomplex_weight_max: usize,
    pub ext_max: usize,
    pub ext_l0_max_n: usize,
    pub ext_l0_t: usize,
    pub bgg_max: usize,
    pub filtration_iso_max: usize,
    pub functor_max: usize,
    pub functor_weight_max: usize,
    pub ind_max: usize,
    pub ind_simple_max: usize,
    pub cable_count_max: usize,
    pub cable_dim_max: usize,
    pub cable_weight_max: usize,
    pub cable_iso_max: usize,
    pub adjoint_max_n: usize,
    pub adjoint_max_k: usize,
    pub tensor_power_max: usize,
    pub interchange_max: usize,
    pub tensor_sum_max: usize,
    pub tensor_weight_max: usize,
    pub k0_degree: usize,
    pub k0_op_max: usize,
    pub aplus_idempotent_max: usize,
    pub aplus_hom_max: usize,
    pub aplus_decompose_max: usize,
}

impl Bounds {
    pub fn full() -> Self {
        Bounds {
            basis_max: 8,
            assoc_max: 4,
            assoc_element_max: 3,
            grading_max: 5,
            module_max: 9,
            standard_max_n: 6,
            standard_weight_max: 9,
            simple_max_k: 3,
            simple_weight_max: 8,
            bicomplex_max_n: 2,
            bicomplex_t: 5,
            bicomplex_exact_top: 3,
            bicomplex_weight_max: 6,
            ext_max: 5,
            ext_l0_max_n: 2,
            ext_l0_t: 8,
            bgg_max: 8,
            filtration_iso_max: 4,
            functor_max: 5,
            functor_weight_max: 8,
            ind_max: 4,
            ind_simple_max: 3,
            cable_count_max: 5,
            cable_dim_max: 4,
            cable_weight_max: 6,
            cable_iso_max: 2,
            adjoint_max_n: 4,
            adjoint_max_k: 3,
            tensor_power_max: 5,
            interchange_max: 3,
            tensor_sum_max: 5,
            tensor_weight_max: 7,
            k0_degree: 10,
            k0_op_max: 5,
            aplus_idempotent_max: 5,
            aplus_hom_max: 6,
            aplus_decompose_max: 6,
        }
    }

    /// Every size capped by `max_n` and every weight by `max_weight`.
    pub fn scaled(max_n: usize, max_weight: usize) -> Self {
        let f = Bounds::full();
        let n = |v: usize| v.min(max_n);
        let w = |v: usize| v.min(max_weight);
        Bounds {
            basis_max: n(f.basis_max),
            assoc_max: n(f.assoc_max).min(3),
            assoc_element_max: n(f.assoc_element_max).min(2),
            grading_max: n(f.grading_max),
            module_max: n(f.module_max).max(w(f.module_max)),
            standard_max_n: n(f.standard_max_n),
            standard_weight_max: w(f.standard_weight_max),
            simple_max_k: n(f.simple_max_k),
            simple_weight_max: w(f.simple_weight_max),
            bicomplex_max_n: n(f.bicomplex_max_n),
            bicomplex_t: n(f.bicomplex_t).max(2),
            bicomplex_exact_top: n(f.bicomplex_exact_top).min(n(f.bicomplex_t).max(2) - 1),
            bicomplex_weight_max: w(f.bicomplex_weight_max),
            ext_max: n(f.ext_max),
            ext_l0_max_n: n(f.ext_l0_max_n),
            ext_l0_t: n(f.ext_l0_t),
            bgg_max: n(f.bgg_max),
            filtration_iso_max: n(f.filtration_iso_max),
            functor_max: n(f.functor_max),
            functor_weight_max: w(f.functor_weight_max),
            ind_max: n(f.ind_max),
            ind_simple_max: n(f.ind_simple_max),
            cable_count_max: n(f.cable_count_max),
            cable_dim_max: n(f.cable_dim_max),
            cable_weight_max: w(f.cable_weight_max),
            cable_iso_max: n(f.cable_iso_max),
            adjoint_max_n: n(f.adjoint_max_n),
            adjoint_max_k: n(f.adjoint_max_k),
            tensor_power_max: n(f.tensor_power_max),
            interchange_max: n(f.interchange_max).min(2),
            tensor_sum_max: n(f.tensor_sum_max),
            tensor_weight_max: w(f.tensor_weight_max),
            k0_degree: n(f.k0_degree),
            k0_op_max: n(f.k0_op_max),
            aplus_idempotent_max: n(f.aplus_idempotent_max),
            aplus_hom_max: n(f.aplus_hom_max),
            aplus_decompose_max: n(f.aplus_decompose_max),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Basis,
    Algebra,
    Modules,
    Resolutions,
    SimpleResolutions,
    Bicomplex,
    Ext,
    Bgg,
    Functors,
    Cabling,
    Monoidal,
    K0,
    Aplus,
    Linearity,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::Basis,
        Suite::Algebra,
        Suite::Modules,
        Suite::Resolutions,
        Suite::SimpleResolutions,
        Suite::Bicomplex,
        Suite::Ext,
        Suite::Bgg,
        Suite::Functors,
        Suite::Cabling,
        Suite::Monoidal,
        Suite::K0,
        Suite::Aplus,
        Suite::Linearity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Basis => "basis",
            Suite::Algebra => "algebra",
            Suite::Modules => "modules",
            Suite::Resolutions => "resolutions",
            Suite::SimpleResolutions => "simple-resolutions",
            Suite::Bicomplex => "bicomplex",
            Suite::Ext => "ext",
            Suite::Bgg => "bgg",
            Suite::Functors => "functors",
            Suite::Cabling => "cabling",
            Suite::Monoidal => "monoidal",
            Suite::K0 => "k0",
            Suite::Aplus => "aplus",
            Suite::Linearity => "linearity",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                format!("unknown suite `{s}`; expected `all` or one of {}", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub field: String,
    pub bounds: Bounds,
    pub summary: Summary,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// `(id, actual)` for every check. Actual values are dimensions, counts
    /// and verdicts, so they must not depend on the field.
    pub fn dimension_table(&self) -> Vec<(String, String)> {
        self.checks
            .iter()
            .map(|c| (c.id.clone(), c.actual.clone()))
            .collect()
    }

    pub fn elapsed(&self) -> Duration {
        self.checks.iter().map(|c| c.elapsed).sum()
    }
}

/// Runs `suites` and collects their checks, sorted by id.
pub fn run<F: Field>(name: &str, suites: &[Suite], bounds: &Bounds, field: &F) -> Report {
    let mut checks: Vec<Check> = suites
        .par_iter()
        .flat_map(|s| run_suite(*s, bounds, field))
        .collect();
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
    Report {
        suite: name.to_string(),
        field: field.spec().to_string(),
        bounds: bounds.clone(),
        summary: Summary {
            total: checks.len(),
            passed,
            failed: checks.len() - passed,
        },
        checks,
    }
}

pub fn verify_all<F: Field>(bounds: &Bounds, field: &F) -> Report {
    run("all", &Suite::ALL, bounds, field)
}

pub fn run_suite<F: Field>(suite: Suite, b: &Bounds, f: &F) -> Vec<Check> {
    match suite {
        Suite::Basis => basis_suite(b),
        Suite::Algebra => algebra_suite(b),
        Suite::Modules => modules_suite(b, f),
        Suite::Resolutions => resolutions_suite(b, f),
        Suite::SimpleResolutions => simple_resolutions_suite(b, f),
        Suite::Bicomplex => bicomplex_suite(b, f),
        Suite::Ext => ext_suite(b, f),
        Suite::Bgg => bgg_suite(b, f),
        Suite::Functors => functors_suite(b, f),
        Suite::Cabling => cabling_suite(b, f),
        Suite::Monoidal => monoidal_suite(b, f),
        Suite::K0 => k0_suite(b, f),
        Suite::Aplus => aplus_suite(b),
        Suite::Linearity => linearity_suite(b),
    }
}

fn pairs(max: usize) -> Vec<(usize, usize)> {
    (0..=max).flat_map(|a| (0..=max).map(move |b| (a, b))).collect()
}

// ---------------------------------------------------------------- suites

fn basis_suite(b: &Bounds) -> Vec<Check> {
    pairs(b.basis_max)
        .into_par_iter()
        .map(|(m, n)| {
            check(format!("basis/count/m{m:02}/n{n:02}"), json!({"m": m, "n": n}), || {
                let widths: Vec<u64> = (0..=m.min(n)).map(|k| binomial(m, k) * binomial(n, k)).collect();
                let found: Vec<usize> = (0..=m.min(n)).map(|k| enumerate_widths(m, n, k..=k).len()).collect();
                (
                    format!("total {} widths {:?}", binomial(m + n, n), widths),
                    format!("total {} widths {:?}", enumerate_basis(m, n).len(), found),
                )
            })
        })
        .collect()
}

fn diagrams_up_to(max: usize) -> Vec<Diagram> {
    pairs(max)
        .into_iter()
        .flat_map(|(m, n)| enumerate_basis(m, n))
        .collect()
}

/// Counts triples `(a, b, c)` with endpoint counts at most `max` on which
/// `(ab)c` and `a(bc)` differ, comparing diagrams and total floating arcs.
/// Equal floating counts give equality in both flavors at once.
pub fn associativity_failures(max: usize) -> (u64, u64) {
    let all = diagrams_up_to(max);
    let by_left: Vec<Vec<Diagram>> = (0..=max)
        .map(|l| all.iter().filter(|d| d.left_count() == l).copied().collect())
        .collect();
    all.par_iter()
        .map(|a| {
            let (mut checked, mut failed) = (0u64, 0u64);
            for bb in &by_left[a.right_count()] {
                let ab = a.compose_unchecked(bb);
                for c in &by_left[bb.right_count()] {
                    let left = ab.diagram.compose_unchecked(c);
                    let bc = bb.compose_unchecked(c);
                    let right = a.compose_unchecked(&bc.diagram);
                    checked += 1;
                    if left.diagram != right.diagram || ab.floating + left.floating != bc.floating + right.floating {
                        failed += 1;
                    }
                }
            }
            (checked, failed)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1))
}

/// Same law on algebra elements of one flavor, using `multiply`.
pub fn associativity_failures_elements(max: usize, flavor: Flavor) -> (u64, u64) {
    let all = diagrams_up_to(max);
    all.par_iter()
        .map(|a| {
            let (mut checked, mut failed) = (0u64, 0u64);
            let ea = AlgebraElement::basis(flavor, *a);
            for bb in all.iter().filter(|d| d.left_count() == a.right_count()) {
                let eb = AlgebraElement::basis(flavor, *bb);
                let ab = ea.multiply(&eb).expect("same flavor");
                for c in all.iter().filter(|d| d.left_count() == bb.right_count()) {
                    let ec = AlgebraElement::basis(flavor, *c);
                    let lhs = ab.multiply(&ec).expect("same flavor");
                    let rhs = ea.multiply(&eb.multiply(&ec).expect("same flavor")).expect("same flavor");
                    checked += 1;
                    if lhs != rhs {
                        failed += 1;
                    }
                }
            }
            (checked, failed)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1))
}

/// Composable pairs with a nonzero `A⁻` product whose sarc degrees do not add.
pub fn grading_failures(max: usize) -> (u64, u64) {
    let all = diagrams_up_to(max);
    all.par_iter()
        .map(|a| {
            let (mut checked, mut failed) = (0u64, 0u64);
            for bb in all.iter().filter(|d| d.left_count() == a.right_count()) {
                let c = a.compose_unchecked(bb);
                if c.floating > 0 {
                    continue;
                }
                checked += 1;
                if c.diagram.sarc_degree() != a.sarc_degree() + bb.sarc_degree() {
                    failed += 1;
                }
            }
            (checked, failed)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1))
}

fn failures_check(id: &str, max: usize, f: impl FnOnce() -> (u64, u64)) -> Check {
    check(id, json!({"max_points": max}), || {
        let (checked, failed) = f();
        ("0 failures".to_string(), format!("{failed} failures{}", if checked == 0 { " (nothing checked)" } else { "" }))
    })
}

fn algebra_suite(b: &Bounds) -> Vec<Check> {
    let (am, em, gm) = (b.assoc_max, b.assoc_element_max, b.grading_max);
    let jobs: Vec<Box<dyn Fn() -> Check + Send + Sync>> = vec![
        Box::new(move || failures_check("algebra/associativity/diagrams", am, || associativity_failures(am))),
        Box::new(move || {
            failures_check("algebra/associativity/minus", em, || associativity_failures_elements(em, Flavor::Minus))
        }),
        Box::new(move || {
            failures_check("algebra/associativity/plus", em, || associativity_failures_elements(em, Flavor::Plus))
        }),
        Box::new(move || failures_check("algebra/grading/minus", gm, || grading_failures(gm))),
    ];
    jobs.par_iter().map(|j| j()).collect()
}

fn modules_suite<F: Field>(b: &Bounds, f: &F) -> Vec<Check> {
    let max = b.module_max;
    (0..=max)
        .into_par_iter()
        .flat_map(|n| {
            vec![
                check(format!("modules/projective/n{n:02}"), json!({"n": n, "max_weight": max}), || {
                    let expected: Vec<u64> = (0..=max).map(|p| binomial(p + n, n)).collect();
                    (show(expected), show(dims(&DiagramModule::projective(f.clone(), n), max)))
                }),
                check(format!("modules/standard/n{n:02}"), json!({"n": n, "max_weight": max}), || {
                    let expected: Vec<u64> = (0..=max).map(|p| binomial(p, n)).collect();
                    (show(expected), show(dims(&DiagramModule::standard(f.clone(), n), max)))
                }),
            ]
        })
        .collect()
}

/// At weight `p`, `d_1` has image exactly the span of the basis diagrams
/// of `P_n` with a right sarc, so `H_0` is `P_n` modulo them, i.e. `M_n`.
fn h0_is_standard<F: Field>(c: &DiagramComplex, n: usize, p: usize, field: &F) -> bool {
    let basis = window_basis(p, n, 0, n);
    let narrow = basis.iter().filter(|d| d.width() < n).count();
    if c.len() < 2 {
        return narrow == 0;
    }
    let lc = c.weight_component(p, field);
    let d1 = &lc.maps[0];
    let inside = d1
        .entries()
        .all(|(r, _, _)| basis[r].width() < n);
    inside && d1.rank(field) == narrow
}

fn resolutions_suite<F: Field>(b: &Bounds, f: &F) -> Vec<Check> {
    let wmax = b.standard_weight_max;
    (0..=b.standard_max_n)
        .into_par_iter()
        .flat_map(|n| {
            let res = resolve_standard(n).expect("resolution builds");
            let params = json!({"n": n, "max_weight": wmax});
            vec![
                check(format!("resolutions/standard/n{n:02}/d2"), params.clone(), || {
                    ("0 failures".into(), format!("{} failures", res.verify_d2().len()))
                }),
                check(format!("resolutions/standard/n{n:02}/exact"), params.clone(), || {
                    let expected: Vec<Vec<usize>> = (0..=wmax)
                        .map(|p| (0..=n).map(|t| if t == 0 { binomial(p, n) as usize } else { 0 }).collect())
                        .collect();
                    let actual: Vec<Vec<usize>> = (0..=wmax).into_par_iter().map(|p| res.homology(p, f)).collect();
                    (show(expected), show(actual))
                }),
                check(format!("resolutions/standard/n{n:02}/h0"), params.clone(), || {
                    let ok = (0..=wmax).into_par_iter().all(|p| h0_is_standard(&res, n, p, f));
                    ("true".into(), ok.to_string())
                }),
                check(format!("resolutions/standard/n{n:02}/euler"), params, || {
                    (
                        PolyClass::standard(n).convert(Basis::Projective).render(),
                        res.euler_class().convert(Basis::Projective).render(),
                    )
                }),
            ]
        })
        .collect()
}

fn simple_resolutions_suite<F: Field>(b: &Bounds, f: &F) -> Vec<Check> {
    let wmax = b.simple_weight_max;
    (0..=b.simple_max_k)
        .into_par_iter()
        .flat_map(|k| {
            // terms in degree t are sums of M_{k+t}, so weights up to wmax need t ≤ wmax + 1 − k
            let t_max = (wmax + 1).saturating_sub(k).max(1);
            let c = resolve_simple_by_standard(k, t_max).expect("resolution builds");
            let params = json!({"k": k, "t_max": t_max, "max_weight": wmax});
            vec![
                check(format!("simple-resolutions/k{k:02}/d2"), params.clone(), || {
                    ("0 failures".into(), format!("{} failures", c.verify_d2().len()))
                }),
                check(format!("simple-resolutions/k{k:02}/exact"), params, || {
                    let expected: Vec<Vec<usize>> = (0..=wmax)
                        .map(|p| (0..c.len()).map(|t| usize::from(t == 0 && p == k)).collect())
                        .collect();
                    let actual: Vec<Vec<usize>> = (0..=wmax).into_par_iter().map(|p| c.homology(p, f)).collect();
                    (show(expected), show(actual))
                }),
            ]
        })
        .collect()
}

fn bicomplex_suite<F: Field>(b: &Bounds, f: &F) -> Vec<Check> {
    let (t, top, wmax) = (b.bicomplex_t, b.bicomplex_exact_top, b.bicomplex_weight_max);
    (0..=b.bicomplex_max_n)
        .into_par_iter()
        .flat_map(|n| {
            let params = json!({"n": n, "t_max": t, "exact_through": top, "max_weight": wmax});
            vec![
                check(format!("bicomplex/n{n:02}/squares"), params.clone(), || {
                    let r = build_bicomplex(n, t).verify();
                    (
                        "anticommute".into(),
                        if r.passed() { "anticommute".into() } else { show(&r) },
                    )
                }),
                check(format!("bicomplex/n{n:02}/total-exact"), params, || {
                    let c = match resolve_simple_projective(n, t) {
                        Ok(c) => c,
                        Err(e) => return ("exact".into(), e.to_string()),
                    };
                    let expected: Vec<Vec<usize>> = (0..=wmax)
                        .map(|p| (0..=top).map(|i| usize::from(i == 0 && p == n)).collect())
                        .collect();
                    let actual: Vec<Vec<usize>> = (0..=wmax)
                        .into_par_iter()
                        .map(|p| c.homology(p, f)[..=top].to_vec())
                        .collect();
                    let d2 = c.verify_d2().is_empty();
                    (show((expected, true)), show((actual, d2)))
                }),
            ]
        })
        .collect()
}

fn ext_suite<F: Field>(b: &Bounds, f: &F) -> Vec<Check> {
    let mut out: Vec<Check> = pairs(b.ext_max)
        .into_par_iter()
        .flat_map(|(n, m)| {
            let params = json!({"n": n, "m": m});
            vec![
                check(format!("ext/standard-standard/n{n:02}/m{m:02}"), params.clone(), || {
                    let t = ext_standard_standard(n, m, f).expect("resolution builds");
                    let predicted: Vec<u64> = t.entries.iter().map(|e| e.predicted).collect();
                    (show((predicted, true)), show((t.dims(), t.induced_maps_zero)))
                }),
                check(format!("ext/standard-simple/n{n:02}/m{m:02}"), params, || {
                    let t = ext_standard_simple(n, m, f).expect("resolution builds");
                    let predicted: Vec<u64> = t.entries.iter().map(|e| e.predicted).collect();
                    (show(predicted), show(t.dims()))
                }),
            ]
        })
        .collect();
    out.extend(
        (0..=b.ext_l0_max_n)
            .into_par_iter()
            .map(|n| {
                check(format!("ext/simple-l0/n{n:02}"), json!({"n": n, "t_max": b.ext_l0_t}), || {
                    let t = ext_simple_simple_l0(n, b.ext_l0_t, f).expect("resolution builds");
                    let predicted: Vec<u64> = t.entries.iter().map(|e| e.predicted).collect();
                    (show(predicted), show(t.dims()))
                })
            })
            .collect::<Vec<_>>(),
    );
    out.extend(
        (0..=b.ext_max)
            .into_par_iter()
            .map(|n| {
                check(format!("ext/homological-dimension/n{n:02}"), json!({"n": n}), || {
                    let res = resolve_standard(n).expect("resolution builds");
                    let d = homological_dimension_standard(n, f).expect("resolution builds");
                    (show((n, n)), show((res.top(), d)))
                })
            })
            .collect::<Vec<_>>(),
    );
    out
}

fn bgg_suite<F: Field>(b: &Bounds, f: &F) -> Vec<Check> {
    let max = b.bgg_max;
    let report = bgg_check(max, f);
    let mut out = vec![
        check("bgg/reciprocity", json!({"max": max}), || {
            let bad: Vec<(usize, usize)> = report
                .cells
                .iter()
                .filter(|c| c.filtration != c.composition)
                .map(|c| (c.n, c.m))
                .collect();
            ("[]".into(), show(bad))
        }),
        check("bgg/cartan-factorization", json!({"size": max + 1}), || {
            ("true".into(), report.factorization_holds.to_string())
        }),
        check("bgg/cartan-counts", json!({"size": max + 1}), || {
            let closed: Vec<Vec<u64>> = (0..=max)
                .map(|i| (0..=max).map(|j| binomial(i + j, i)).collect())
                .collect();
            (show(closed), show(cartan_matrix(max + 1)))
        }),
    ];
    let iso = b.filtration_iso_max;
    out.extend(
        pairs(iso)
            .into_par_iter()
            .filter(|(n, m)| m <= n)
            .map(|(n, m)| {
                check(format!("bgg/filtration-layer/n{n:02}/m{m:02}"), json!({"n": n, "m": m, "cutoff": iso}), || {
                    let layer = filtration_layer(f, n, m, iso);
                    (
                        show((binomial(n, m) as usize, "isomorphic")),
                        show((layer.multiplicity(), layer.verify().to_string())),
                    )
                })
            })
            .collect::<Vec<_>>(),
    );
    out
}

fn functors_suite<F: Field>(b: &Bounds, f: &F) -> Vec<Check> {
    let (fm, w) = (b.functor_max, b.functor_weight_max);
    let mut out: Vec<Check> = pairs(fm)
        .into_par_iter()
        .map(|(n, k)| {
            check(format!("functors/fk/n{n:02}/k{k:02}"), json!({"n": n, "k": k, "max_weight": w}), || {
                let r = derived_fk_standard(n, k, w, f).expect("resolution builds");
                ("holds".into(), if r.holds { "holds".into() } else { show(&r.table) })
            })
        })
        .collect();
    let cases = [(ResCase::Projective, "projective"), (ResCase::Standard, "standard"), (ResCase::Simple, "simple")];
    out.extend(
        (0..=fm)
            .into_par_iter()
            .flat_map(|n| {
                cases
                    .iter()
                    .map(|(case, name)| {
                        check(format!("functors/res/{name}/n{n:02}"), json!({"n": n, "max_weight": w}), || {
                            let r = res_report(*case, n, w, f);
                            ("isomorphic".into(), r.detail)
                        })
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>(),
    );
    out.extend(
        (0..=fm)
            .into_par_iter()
            .map(|n| {
                check(format!("functors/res/cokernel/n{n:02}"), json!({"n": n, "max_weight": w}), || {
                    let coker: ModuleRef<F> = Arc::new(Cokernel::new(f.clone(), Presentation::standard(n)));
                    let res = Restricted::new(coker);
                    let expected: Vec<u64> = (0..=w)
                        .map(|p| binomial(p, n) + if n > 0 { binomial(p, n - 1) } else { 0 })
                        .collect();
                    (show(expected), show(dims(&res, w)))
                })
            })
            .collect::<Vec<_>>(),
    );
    out.extend(
        (0..=b.ind_max)
            .into_par_iter()
            .flat_map(|n| {
                let params = json!({"n": n, "max_weight": w});
                vec![
                    check(format!("functors/ind/projective/n{n:02}"), params.clone(), || {
                        ("isomorphic".into(), ind_projective_report(n, w, f).detail)
                    }),
                    check(format!("functors/ind/standard-ses/n{n:02}"), params.clone(), || {
                        let r = ind_standard_report(n, w, f);
                        ("true".into(), if r.holds { "true".into() } else { r.detail })
                    }),
                    check(format!("functors/ind/derived/n{n:02}"), params, || {
                        let r = derived_ind_report(n, w, f).expect("resolution builds");
                        ("holds".into(), if r.holds { "holds".into() } else { show(&r.table) })
                    }),
                ]
            })
            .collect::<Vec<_>>(),
    );
    out.extend(
        (0..=b.ind_simple_max)
            .into_par_iter()
            .map(|n| {
                let top = w.min(7);
                check(format!("functors/ind/simple/n{n:02}"), json!({"n": n, "max_weight": top}), || {
                    let expected: Vec<usize> = (0..=top).map(|m| usize::from(m >= n)).collect();
                    (show(expected), show(ind_simple_dims(n, top, f)))
                })
            })
            .collect::<Vec<_>>(),
    );
    out
}

/// `S(n,k,i)` as displayed for `^{[k]}M_0 … ^{[k]}M_3` with symbolic `k`.
fn displayed_cable_multiplicities(n: usize, k: usize) -> Vec<u64> {
    let c = |a: usize, b: usize| binomial(a, b);
    let k64 = k as u64;
    match n {
        0 => vec![1],
        1 => vec![0, k64],
        2 => vec![0, c(k, 2), k64 * k64],
        3 => vec![0, c(k, 3), 2 * k64 * c(k, 2), k64 * k64 * k64],
        _ => unreachable!("displays cover n ≤ 3"),
    }
}

fn cabling_suite<F: Field>(b: &Bounds, f: &F) -> Vec<Check> {
    let cm = b.cable_count_max;
    let mut out: Vec<Check> = pairs(cm)
        .into_par_iter()
        .filter(|(_, k)| *k >= 1)
        .map(|(n, k)| {
            check(format!("cabling/s-count/n{n:02}/k{k:02}"), json!({"n": n, "k": k}), || {
                let a: Vec<BigInt> = (0..=n).map(|i| s_count(n, k, i)).collect();
                let s: Vec<BigInt> = (0..=n).map(|i| BigInt::from(s_count_by_selection(n, k, i))).collect();
                (show(a), show(s))
            })
        })
        .collect();
    out.extend(
        pairs(cm.min(3))
            .into_par_iter()
            .filter(|(_, k)| *k >= 1)
            .map(|(n, k)| {
                check(format!("cabling/display/n{n:02}/k{k:02}"), json!({"n": n, "k": k}), || {
                    let s: Vec<u64> = (0..=n)
                        .map(|i| s_count_by_selection(n, k, i))
                        .collect();
                    (show(displayed_cable_multiplicities(n, k)), show(s))
                })
            })
            .collect::<Vec<_>>(),
    );
    let (dm, cw) = (b.cable_dim_max, b.cable_weight_max);
    out.extend(
        pairs(dm)
            .into_par_iter()
            .filter(|(_, k)| *k >= 1)
            .map(|(n, k)| {
                check(format!("cabling/dims/n{n:02}/k{k:02}"), json!({"n": n, "k": k, "max_weight": cw}), || {
                    let r = cable_standard_report(n, k, cw, f);
                    let cols = |i: usize| -> Vec<usize> { r.table.iter().map(|row| row.values[i]).collect() };
                    (show(cols(1)), show(cols(0)))
                })
            })
            .collect::<Vec<_>>(),
    );
    let im = b.cable_iso_max;
    out.extend(
        pairs(im)
            .into_par_iter()
            .filter(|(_, k)| *k >= 1)
            .map(|(n, k)| {
                check(format!("cabling/iso/n{n:02}/k{k:02}"), json!({"n": n, "k": k, "cutoff": 3}), || {
                    let (src, tgt, m) = cable_standard_iso(f, n, k, 3);
                    ("isomorphic".into(), check_isomorphism(&m, &src, &tgt).to_string())
                })
            })
            .collect::<Vec<_>>(),
    );
    out.extend(
        (0..=6usize.min(cm + 1))
            .into_par_iter()
            .flat_map(|n| {
                (1..=3)
                    .map(|k| {
                        check(format!("cabling/simple/n{n:02}/k{k:02}"), json!({"n": n, "k": k}), || {
                            let top = n + 1;
                            let expected: Vec<usize> = (0..=top).map(|p| usize::from(n % k == 0 && p == n / k)).collect();
                            let m = Cabled::new(Arc::new(Simple::new(f.clone(), n)), k);
                            (show(expected), show(dims(&m, top)))
                        })
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>(),
    );
    out.extend(
        pairs(3)
            .into_par_iter()
            .filter(|(k, s)| *k >= 1 && *s >= 1)
            .map(|(k, s)| {
                check(format!("cabling/functorial/k{k:02}/s{s:02}"), json!({"k": k, "s": s, "max_weight": 2}), || {
                    let inner: ModuleRef<F> = Arc::new(DiagramModule::standard(f.clone(), 2));
                    let twice = Cabled::new(Arc::new(Cabled::new(inner.clone(), k)), s);
                    (show(dims(&Cabled::new(inner, k * s), 2)), show(dims(&twice, 2)))
                })
            })
            .collect::<Vec<_>>(),
    );
    let (an, ak) = (b.adjoint_max_n, b.adjoint_max_k);
    out.extend(
        pairs(an)
            .into_par_iter()
            .filter(|(_, k)| *k >= 1 && *k <= ak)
            .map(|(n, k)| {
                check(format!("cabling/adjoint/n{n:02}/k{k:02}"), json!({"n": n, "k": k}), || {
                    let mut lk = Vec::new();
                    let mut cabled = Vec::new();
                    for j in 0..=3 {
                        let modules: [ModuleRef<F>; 3] = [
                            Arc::new(DiagramModule::projective(f.clone(), j)),
                            Arc::new(DiagramModule::standard(f.clone(), j)),
                            Arc::new(Simple::new(f.clone(), j)),
                        ];
                        for m in modules {
                            let r = weak_adjointness_check(n, m, k).expect("k ≥ 1");
                            lk.push(r.hom_lk);
                            cabled.push(r.hom_cabled);
                        }
                    }
                    (show(lk), show(cabled))
                })
            })
            .collect::<Vec<_>>(),
    );
    out
}

fn monoidal_suite<F: Field>(b: &Bounds, f: &F) -> Vec<Check> {
    let mut out: Vec<Check> = (1..=b.tensor_power_max)
        .into_par_iter()
        .map(|n| {
            check(format!("monoidal/m1-power/n{n:02}"), json!({"n": n}), || {
                let power = m1_tensor_power(n).expect("tensor product builds");
                let standard = resolve_standard(n).expect("resolution builds");
                let sigma = tensor_power_label_map(n, &power, &standard);
                let verdict = match signed_isomorphism(&power, &standard, &sigma) {
                    Ok(_) => "isomorphic".to_string(),
                    Err(e) => e.to_string(),
                };
                ("isomorphic".into(), verdict)
            })
        })
        .collect();
    let im = b.interchange_max;
    out.push(check("monoidal/interchange", json!({"max_points": im}), || {
        (
            "ok".into(),
            match interchange_check(im) {
                Ok(_) => "ok".into(),
                Err(e) => e,
            },
        )
    }));
    let (sm, w) = (b.tensor_sum_max, b.tensor_weight_max);
    out.extend(
        pairs(sm)
            .into_par_iter()
            .filter(|(n, m)| n + m <= sm)
            .map(|(n, m)| {
                check(format!("monoidal/standard-tensor/n{n:02}/m{m:02}"), json!({"n": n, "m": m, "max_weight": w}), || {
                    let r = tensor_resolutions_report(n, m, w, f).expect("tensor product builds");
                    ("holds".into(), if r.holds { "holds".into() } else { show(&r.table) })
                })
            })
            .collect::<Vec<_>>(),
    );
    out
}

fn k0_suite<F: Field>(b: &Bounds, f: &F) -> Vec<Check> {
    let deg = b.k0_degree;
    let mut out = vec![
        check("k0/conversion-inverse", json!({"degree": deg}), || {
            // x^j = Σ_i C(j,i)(x−1)^i and (x−1)^j = Σ_i (−1)^{j−i} C(j,i) x^i
            let to_std: Vec<Vec<i64>> = (0..=deg)
                .map(|j| {
                    let c = PolyClass::projective(j).convert(Basis::Standard);
                    (0..=deg).map(|i| i64::try_from(c.coeff(i)).expect("small")).collect()
                })
                .collect();
            let to_proj: Vec<Vec<i64>> = (0..=deg)
                .map(|j| {
                    let c = PolyClass::standard(j).convert(Basis::Projective);
                    (0..=deg).map(|i| i64::try_from(c.coeff(i)).expect("small")).collect()
                })
                .collect();
            let closed = (0..=deg).all(|j| {
                (0..=deg).all(|i| {
                    let b = binomial(j, i) as i64;
                    let sign = if (j + i) % 2 == 0 { 1 } else { -1 };
                    to_std[j][i] == b && to_proj[j][i] == sign * b
                })
            });
            let product_is_identity = (0..=deg).all(|j| {
                (0..=deg).all(|l| {
                    let s: i64 = (0..=deg).map(|i| to_std[j][i] * to_proj[i][l]).sum();
                    s == i64::from(j == l)
                })
            });
            ("true true".into(), format!("{closed} {product_is_identity}"))
        }),
        check("k0/tensor-multiplicative", json!({"degree": deg}), || {
            let ok = pairs(deg)
                .into_iter()
                .filter(|(n, m)| n + m <= deg)
                .all(|(n, m)| {
                    PolyClass::standard(n)
                        .mul(&PolyClass::standard(m))
                        .convert(Basis::Projective)
                        == PolyClass::standard(n + m).convert(Basis::Projective)
                });
            ("true".into(), ok.to_string())
        }),
    ];
    let om = b.k0_op_max;
    let mut functors = vec![K0Functor::Res, K0Functor::Ind];
    functors.extend((0..=om).map(K0Functor::Fk));
    functors.extend((1..=3).map(K0Functor::Cable));
    let jobs: Vec<(K0Functor, usize, bool)> = functors
        .iter()
        .flat_map(|func| (0..=om).flat_map(move |n| [(*func, n, false), (*func, n, true)]))
        .collect();
    out.extend(
        jobs.into_par_iter()
            .map(|(func, n, standard)| {
                let input = if standard { format!("M{n:02}") } else { format!("P{n:02}") };
                check(format!("k0/operator/{func}/{input}"), json!({"functor": func.to_string(), "n": n, "standard": standard}), || {
                    let c = k0_comparison(func, n, standard, f).expect("functor applies");
                    (c.from_operator.render(), c.from_module.render())
                })
            })
            .collect::<Vec<_>>(),
    );
    out
}

fn aplus_suite(b: &Bounds) -> Vec<Check> {
    let mut out: Vec<Check> = (0..=b.aplus_idempotent_max)
        .into_par_iter()
        .map(|n| {
            check(format!("aplus/idempotents/n{n:02}"), json!({"n": n}), || {
                let s = idempotent_suite(n).expect("plus flavor");
                ("true true true".into(), format!("{} {} {}", s.idempotent, s.orthogonal, s.sum_is_unit))
            })
        })
        .collect();
    let hm = b.aplus_hom_max;
    out.extend(
        pairs(hm)
            .into_par_iter()
            .map(|(m, n)| {
                check(format!("aplus/hom/m{m:02}/n{n:02}"), json!({"m": m, "n": n}), || {
                    (usize::from(m == n).to_string(), hom_dim_plus(m, n).expect("plus flavor").to_string())
                })
            })
            .collect::<Vec<_>>(),
    );
    out.extend(
        (0..=b.aplus_decompose_max)
            .into_par_iter()
            .flat_map(|n| {
                vec![
                    check(format!("aplus/decompose/n{n:02}"), json!({"n": n}), || {
                        let d = decompose_projective_plus(n).expect("plus flavor");
                        let expected: Vec<u64> = (0..=n).map(|m| binomial(n, m)).collect();
                        let actual: Vec<u64> = (0..=n).map(|m| d.multiplicities.get(&m).copied().unwrap_or(0)).collect();
                        (show((expected, true)), show((actual, d.equivalences_verified)))
                    }),
                    check(format!("aplus/k0/n{n:02}"), json!({"n": n}), || {
                        (
                            PolyClass::standard(n).convert(Basis::Projective).render(),
                            k0_plus_class(n).render(),
                        )
                    }),
                ]
            })
            .collect::<Vec<_>>(),
    );
    out
}

fn linearity_suite(b: &Bounds) -> Vec<Check> {
    let mut out: Vec<Check> = (0..=b.standard_max_n)
        .into_par_iter()
        .map(|n| {
            check(format!("linearity/standard/n{n:02}"), json!({"n": n}), || {
                ("true".into(), resolve_standard(n).expect("builds").check_linearity().to_string())
            })
        })
        .collect();
    out.extend(
        (0..=b.bicomplex_max_n)
            .into_par_iter()
            .map(|n| {
                check(format!("linearity/simple-projective/n{n:02}"), json!({"n": n, "t_max": b.bicomplex_t}), || {
                    let c = resolve_simple_projective(n, b.bicomplex_t).expect("builds");
                    ("true".into(), c.check_linearity().to_string())
                })
            })
            .collect::<Vec<_>>(),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let b = Bounds::scaled(2, 4);
        let r1 = verify_all(&b, &Rationals);
        if let Some(c) = r1.failures().next() {
            panic!("{}: expected {} got {}", c.id, c.expected, c.actual);
        }
        let r2 = verify_all(&b, &Rationals);
        assert_eq!(r1.to_json(), r2.to_json());
        let rp = verify_all(&b, &PrimeField::default());
        assert_eq!(r1.dimension_table(), rp.dimension_table());
        let ids: Vec<&str> = r1.checks.iter().map(|c| c.id.as_str()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn a_failing_check_is_reported() {
        let c = check("x", json!({}), || ("1".into(), "2".into()));
        assert_eq!(c.status, Status::Fail);
        assert!(!serde_json::to_string(&c).unwrap().contains("elapsed"));
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
