//! Named self-check suites shared by `nilpair selftest` and the acceptance run.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canon::formulas;
use crate::canon::{build_canonical, canonicalize, similar, BlockLabel, CanonForm, IndecBlock};
use crate::commutant::{case_matrix, commutant, stab_contains, CaseCoordinates, StabParams};
use crate::decompose::is_indecomposable;
use crate::error::{Error, Result};
use crate::field::{FieldScalar, FieldSpec};
use crate::jordan::JordanType;
use crate::matrix::SqMatrix;
use crate::oracle::{agreement_check, agreement_on, crosscheck, CrosscheckOptions};
use crate::pair::MatrixPair;
use crate::sample::{random_invertible, random_pair, random_scalar, small_entry_pair};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub trials: u64,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn from_failures(name: impl Into<String>, trials: u64, mut failures: Vec<String>) -> Self {
        let total = failures.len();
        failures.truncate(20);
        if total > 20 {
            failures.push(format!("{} further failures omitted", total - 20));
        }
        SuiteResult {
            name: name.into(),
            passed: total == 0,
            trials,
            failures,
        }
    }
}

const PARTITIONS: [&[usize]; 5] = [&[4], &[3, 1], &[2, 2], &[2, 1, 1], &[1, 1, 1, 1]];

/// The four-by-four labels, one per family of indecomposables.
pub const FAMILIES: [BlockLabel; 9] = [
    BlockLabel::F11,
    BlockLabel::F21,
    BlockLabel::F22,
    BlockLabel::F31,
    BlockLabel::F32,
    BlockLabel::F41,
    BlockLabel::F42,
    BlockLabel::F43,
    BlockLabel::F51,
];

fn random_stab<R: Rng>(case: usize, spec: FieldSpec, rng: &mut R) -> StabParams {
    let mut r = || random_scalar(spec, rng);
    loop {
        let sp = match case {
            1 => StabParams::Case1 {
                x: r(),
                y: r(),
                z: r(),
                w: r(),
            },
            2 => StabParams::Case2 {
                x: r(),
                y: r(),
                z: r(),
                w: r(),
                s: r(),
                t: r(),
            },
            3 => StabParams::Case3 {
                x: r(),
                s: r(),
                u: r(),
                z: r(),
                y: r(),
                t: r(),
                v: r(),
                w: r(),
            },
            4 => StabParams::Case4 {
                x: r(),
                y: r(),
                s: r(),
                t: r(),
                p: r(),
                q: r(),
                z: r(),
                u: r(),
                v: r(),
                w: r(),
            },
            _ => {
                let v = (0..16).map(|_| r()).collect();
                StabParams::Case5 {
                    x: SqMatrix::from_vector(4, spec, v).expect("4x4"),
                }
            }
        };
        if sp.is_admissible() {
            return sp;
        }
    }
}

/// Commutant dimensions of the five 4×4 Jordan types against
/// `(4, 6, 8, 10, 16)`, and generic stabilizer elements commuting with `A`.
pub fn commutant_dimensions(spec: FieldSpec, seed: u64) -> SuiteResult {
    let expected = [4, 6, 8, 10, 16];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for (case, (parts, want)) in PARTITIONS.iter().zip(expected).enumerate() {
        let jt = JordanType::new(parts.to_vec()).expect("partitions of 4");
        let a = case_matrix(&jt, spec);
        let got = commutant(&a).dim();
        if got != want || jt.commutant_dim() != want {
            failures.push(format!("type {jt}: dimension {got}, expected {want}"));
        }
        for _ in 0..20 {
            let x = random_stab(case + 1, spec, &mut rng).matrix(spec);
            if !stab_contains(&a, &x) {
                failures.push(format!("type {jt}: parametrized element {x:?} not in Stab"));
                break;
            }
        }
    }
    SuiteResult::from_failures(format!("commutant_dimensions {spec}"), 5, failures)
}

fn coords4<R: Rng>(case: usize, spec: FieldSpec, rng: &mut R) -> CaseCoordinates {
    let mut r = || random_scalar(spec, rng);
    match case {
        2 => CaseCoordinates::Case2 {
            alpha: r(),
            beta: r(),
            sigma: r(),
            tau: r(),
        },
        3 => CaseCoordinates::Case3 {
            alpha: spec.zero(),
            lambda: spec.one(),
            sigma: spec.zero(),
            gamma: spec.zero(),
            beta: r(),
            mu: r(),
            tau: r(),
            delta: r(),
        },
        // 40: lower block J₂, 41: lower block zero
        40 | 41 => {
            let lower = case == 40;
            CaseCoordinates::Case4 {
                alpha: r(),
                sigma: r(),
                tau: r(),
                lambda: r(),
                mu: r(),
                beta: spec.zero(),
                gamma: if lower { spec.one() } else { spec.zero() },
                delta: spec.zero(),
                eta: spec.zero(),
            }
        }
        _ => unreachable!("formula cases are 2, 3, 40, 41"),
    }
}

/// `X` restricted to the shape each formula is stated for.
fn restricted_stab<R: Rng>(case: usize, spec: FieldSpec, rng: &mut R) -> StabParams {
    loop {
        let sp = random_stab(if case >= 40 { 4 } else { case }, spec, rng);
        let sp = match sp {
            StabParams::Case3 { s, y, t, v, w, .. } => StabParams::Case3 {
                x: spec.one(),
                s,
                u: spec.zero(),
                z: spec.one(),
                y,
                t,
                v,
                w,
            },
            StabParams::Case4 {
                y, s, t, p, q, z, u, v, w, ..
            } => {
                if case == 40 {
                    StabParams::Case4 {
                        x: spec.one(),
                        y,
                        s,
                        t,
                        p,
                        q,
                        z: z.clone(),
                        u,
                        v: spec.zero(),
                        w: z,
                    }
                } else {
                    StabParams::Case4 {
                        x: spec.one(),
                        y,
                        s,
                        t,
                        p,
                        q,
                        z,
                        u,
                        v,
                        w,
                    }
                }
            }
            other => other,
        };
        if sp.is_admissible() {
            return sp;
        }
    }
}

type Formula = fn(&CaseCoordinates, &StabParams) -> Result<FieldScalar>;

/// Each closed-form prediction against the entry of `X⁻¹BX` computed by
/// matrix multiplication, and the engine's own checks on the same `B`.
pub fn formula_fidelity(spec: FieldSpec, trials: u64, seed: u64) -> Vec<SuiteResult> {
    let table: [(&str, usize, Formula, (usize, usize), &[usize]); 4] = [
        ("beta'", 2, formulas::case2_beta_prime, (0, 2), &[3, 1]),
        ("mu'", 3, formulas::case3_mu_prime, (0, 3), &[2, 2]),
        ("alpha' (J2 block)", 40, formulas::case4_alpha_prime_jordan, (0, 1), &[2, 1, 1]),
        ("alpha' (zero block)", 41, formulas::case4_alpha_prime_zero, (0, 1), &[2, 1, 1]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    table
        .iter()
        .map(|&(name, case, f, entry, parts)| {
            let jt = JordanType::new(parts.to_vec()).expect("partition of 4");
            let a = case_matrix(&jt, spec);
            let mut failures = Vec::new();
            for _ in 0..trials {
                let b = coords4(case, spec, &mut rng);
                let sp = restricted_stab(case, spec, &mut rng);
                let bm = b.reconstruct(spec);
                let direct = match bm.conjugate_by(&sp.matrix(spec)) {
                    Ok(m) => m[entry].clone(),
                    Err(e) => {
                        failures.push(e.to_string());
                        continue;
                    }
                };
                match f(&b, &sp) {
                    Ok(v) if v == direct => {}
                    Ok(v) => failures.push(format!("{b:?} {sp:?}: formula {v}, direct {direct}")),
                    Err(e) => failures.push(e.to_string()),
                }
                // the engine re-derives the same entry on its own path
                let pair = MatrixPair::new(a.clone(), bm).expect("B lies in NilC(A)");
                if let Err(e @ Error::Internal(_)) = canonicalize(&pair) {
                    failures.push(format!("engine: {e}"));
                }
            }
            SuiteResult::from_failures(format!("formula {name} {spec}"), trials, failures)
        })
        .collect()
}

/// Parameter settings per family: every tuple over a field with at most
/// `limit` tuples, else `limit` distinct tuples from a small grid.
pub fn family_settings(label: BlockLabel, spec: FieldSpec, limit: usize) -> Vec<Vec<FieldScalar>> {
    let k = label.param_count();
    if let Some(q) = spec.order() {
        let total = q.pow(k as u32);
        if total as usize <= limit.max(q.pow(3) as usize) {
            return (0..total)
                .map(|mut i| {
                    let mut t = vec![spec.zero(); k];
                    for slot in t.iter_mut().rev() {
                        *slot = spec.element(i % q);
                        i /= q;
                    }
                    t
                })
                .collect();
        }
    }
    if k == 0 {
        return vec![vec![]];
    }
    let grid: Vec<FieldScalar> = [(0, 1), (1, 1), (-1, 1), (2, 1), (1, 2), (-3, 1), (5, 3)]
        .iter()
        .map(|&(n, d)| spec.from_ratio(n, d).expect("nonzero denominators"))
        .collect();
    (0..limit.min(grid.len()))
        .map(|i| (0..k).map(|j| grid[(i + j) % grid.len()].clone()).collect())
        .collect()
}

/// Canonical pairs of each size-four family: valid, certified
/// indecomposable, fixed by the canonicalizer with witness `I`, and
/// pairwise non-similar.
pub fn family_instances(spec: FieldSpec, settings: usize) -> SuiteResult {
    let mut failures = Vec::new();
    let mut built: Vec<(CanonForm, MatrixPair)> = Vec::new();
    for label in FAMILIES {
        for params in family_settings(label, spec, settings) {
            let block = IndecBlock::new(label, params).expect("parameter count");
            let cf = CanonForm::new(vec![block]);
            let pair = match build_canonical(&cf, spec) {
                Ok(p) => p,
                Err(e) => {
                    failures.push(format!("{cf}: {e}"));
                    continue;
                }
            };
            match is_indecomposable(&pair) {
                Ok(c) if c.is_indecomposable() => {}
                Ok(c) => failures.push(format!("{cf}: checker found a split {:?}", c.verdict)),
                Err(e) => failures.push(format!("{cf}: {e}")),
            }
            match canonicalize(&pair) {
                Ok(c) if c.form == cf && c.witness.is_identity() => {}
                Ok(c) => failures.push(format!("{cf}: canonicalized to {} ", c.form)),
                Err(e) => failures.push(format!("{cf}: {e}")),
            }
            built.push((cf, pair));
        }
    }
    for (i, (cf1, p1)) in built.iter().enumerate() {
        for (cf2, p2) in &built[i + 1..] {
            match similar(p1, p2) {
                Ok(None) => {}
                Ok(Some(_)) => failures.push(format!("{cf1} and {cf2} are similar")),
                Err(e) => failures.push(format!("{cf1} vs {cf2}: {e}")),
            }
        }
    }
    SuiteResult::from_failures(
        format!("family_instances {spec}"),
        built.len() as u64,
        failures,
    )
}

/// Random canonical pairs conjugated by random invertible matrices must
/// come back to the same form with a witness that verifies exactly.
pub fn witness_exactness(spec: FieldSpec, trials: u64, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..trials {
        let n = if i % 4 == 0 { rng.gen_range(1..=3) } else { 4 };
        let (pair, cf) = random_pair(n, spec, &mut rng);
        match canonicalize(&pair) {
            Ok(c) if c.form != cf => failures.push(format!("{cf} came back as {}", c.form)),
            Ok(c) => {
                let target = build_canonical(&cf, spec).expect("valid form");
                if pair.conjugate_by(&c.witness).ok().as_ref() != Some(&target) {
                    failures.push(format!("{cf}: witness fails"));
                }
            }
            Err(e) => failures.push(format!("{cf}: {e}")),
        }
    }
    SuiteResult::from_failures(format!("witness_exactness {spec}"), trials, failures)
}

/// GF(2) crosscheck for every `n` up to `max_n`, with the elapsed time.
pub fn gf2_crosscheck(max_n: usize) -> (SuiteResult, f64) {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut total = 0;
    let mut extension = 0;
    for n in 1..=max_n {
        match crosscheck(2, n, CrosscheckOptions::default()) {
            Ok(r) => {
                total += r.total_pairs;
                extension += r.orbits_extension;
                if !r.passed() {
                    failures.push(format!("n = {n}: {:?}", r.mismatches));
                }
            }
            Err(e) => failures.push(format!("n = {n}: {e}")),
        }
    }
    if max_n == 4 && extension == 0 {
        failures.push("no orbit needed GF(4)".into());
    }
    (
        SuiteResult::from_failures("crosscheck GF(2)", total, failures),
        start.elapsed().as_secs_f64(),
    )
}

/// Block count against the checker on every pair over GF(p) up to `max_n`.
pub fn exhaustive_agreement(p: u32, max_n: usize) -> SuiteResult {
    let mut failures = Vec::new();
    let mut total = 0;
    for n in 1..=max_n {
        match agreement_check(p, n) {
            Ok(r) => {
                total += r.total_pairs;
                failures.extend(r.disagreements);
            }
            Err(e) => failures.push(format!("n = {n}: {e}")),
        }
    }
    SuiteResult::from_failures(format!("agreement GF({p})"), total, failures)
}

/// Block count against the checker on random pairs over ℚ: half conjugated
/// canonical pairs, half pairs with small entries.
pub fn random_agreement(trials: u64, seed: u64) -> SuiteResult {
    let spec = FieldSpec::Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..trials {
        let pair = if i % 2 == 0 {
            random_pair(rng.gen_range(2..=4), spec, &mut rng).0
        } else {
            small_entry_pair(rng.gen_range(2..=4), &mut rng)
        };
        match agreement_on(&pair) {
            Ok(a) if a.agrees() => {}
            Ok(a) => failures.push(format!("{pair:?}: {a:?}")),
            Err(e) => failures.push(format!("{pair:?}: {e}")),
        }
    }
    SuiteResult::from_failures("agreement Q", trials, failures)
}

/// A random invertible change of basis leaves the pair commutant dimension alone.
pub fn conjugation_invariance(spec: FieldSpec, trials: u64, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..trials {
        let (pair, cf) = random_pair(4, spec, &mut rng);
        let x = random_invertible(4, spec, &mut rng);
        let moved = pair.conjugate_by(&x).expect("invertible");
        match (canonicalize(&pair), canonicalize(&moved)) {
            (Ok(a), Ok(b)) if a.form == b.form => {}
            (a, b) => failures.push(format!("{cf}: {:?} vs {:?}", a.map(|c| c.form), b.map(|c| c.form))),
        }
    }
    SuiteResult::from_failures(format!("conjugation_invariance {spec}"), trials, failures)
}
