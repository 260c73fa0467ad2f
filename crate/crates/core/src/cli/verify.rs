//! Cross-checks between the independent computations, run by `twistalg verify`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use clap::ValueEnum;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{BasisRescaling, StructureConstants};
use crate::classify::{
    brute_force_sym_classes, count_assoc_classes, count_sym_classes, enumerate_assoc_representatives,
    enumerate_sym_classes, free_slots, iso_test_associative, iso_test_symmetric, reconstruct_from_params, Field,
    SymClassParams,
};
use crate::coeff::CoeffDescriptor;
use crate::cohomology::{
    boundary_matrix, h2_bruteforce_many, h2_closed_form, h2_from_resolution, tensor_resolution_maps, AbelianGroupShape,
};
use crate::error::Result;
use crate::group::GroupSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Cohomology,
    Algebra,
    Classify,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}/{}: {}", self.suite, self.name, self.detail)
    }
}

/// Every presentation `n_1 <= n_2 <= ...` with all `n_i >= 2` and `|G| <= 16`, followed
/// by a few unsorted and padded presentations.
pub fn small_groups() -> Vec<GroupSpec> {
    fn extend(prefix: &mut Vec<u64>, min: u64, budget: u64, out: &mut Vec<GroupSpec>) {
        for n in min..=budget {
            prefix.push(n);
            out.push(GroupSpec::new(prefix.clone()).expect("moduli are positive"));
            extend(prefix, n, budget / n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 2, 16, &mut out);
    for extra in [vec![3, 2], vec![4, 2], vec![2, 3, 2], vec![1, 4], vec![2, 1, 3]] {
        out.push(GroupSpec::new(extra).expect("moduli are positive"));
    }
    out
}

const H2_MODULI: [u64; 5] = [2, 3, 4, 6, 12];

struct Runner {
    suite: &'static str,
    out: Vec<CheckOutcome>,
}

impl Runner {
    fn record(&mut self, name: &'static str, result: Result<std::result::Result<String, String>>) {
        let (passed, detail) = match result {
            Ok(Ok(d)) => (true, d),
            Ok(Err(d)) => (false, d),
            Err(e) => (false, format!("error: {e}")),
        };
        self.out.push(CheckOutcome { suite: self.suite, name, passed, detail });
    }
}

fn fail_on<T: fmt::Display>(failures: Vec<T>, ok: String) -> std::result::Result<String, String> {
    if failures.is_empty() {
        Ok(ok)
    } else {
        let shown: Vec<String> = failures.iter().take(5).map(|f| f.to_string()).collect();
        Err(format!("{} failure(s): {}", failures.len(), shown.join("; ")))
    }
}

fn random_lambda(g: &GroupSpec, m: u64, rng: &mut ChaCha8Rng) -> BasisRescaling {
    let values = (0..g.order()).map(|i| if i == 0 { 0 } else { rng.gen_range(0..m) }).collect();
    BasisRescaling::new(g.clone(), m, values).expect("λ(e) = 1 and one value per element")
}

fn random_table(g: &GroupSpec, n: u64, rng: &mut ChaCha8Rng) -> StructureConstants {
    StructureConstants::from_fn(g.clone(), n, |a, b| if a == 0 || b == 0 { 0 } else { rng.gen_range(0..n as i64) })
        .expect("unital by construction")
}

fn random_sym(g: &GroupSpec, n: u64, rng: &mut ChaCha8Rng) -> Result<StructureConstants> {
    let values = free_slots(g)
        .iter()
        .map(|s| {
            let c = s.choices(g, n);
            rng.gen_range(0..c) * (n / c)
        })
        .collect();
    reconstruct_from_params(&SymClassParams::new(g.clone(), n, values)?)
}

fn grp(moduli: &[u64]) -> GroupSpec {
    GroupSpec::new(moduli.to_vec()).expect("moduli are positive")
}

fn cohomology_checks(groups: &[GroupSpec], brute: &BTreeMap<String, Vec<AbelianGroupShape>>) -> Vec<CheckOutcome> {
    let mut r = Runner { suite: "cohomology", out: Vec::new() };

    r.record(
        "complex property",
        (|| {
            let mut failures = Vec::new();
            for g in groups {
                let composite = boundary_matrix(g, 2)?.mul(&boundary_matrix(g, 1)?);
                if !composite.is_zero() {
                    failures.push(format!("∂²∂¹ ≠ 0 on {g}"));
                }
                let (d1, d2) = tensor_resolution_maps(g);
                if !d2.mul(&d1).is_zero() {
                    failures.push(format!("D²D¹ ≠ 0 on {g}"));
                }
            }
            Ok(fail_on(failures, format!("{} groups", groups.len())))
        })(),
    );

    r.record(
        "triple agreement",
        (|| {
            let mut failures = Vec::new();
            for g in groups {
                for (shape, &n) in brute[&g.to_string()].iter().zip(&H2_MODULI) {
                    let res = h2_from_resolution(g, n)?;
                    let closed = h2_closed_form(g, &CoeffDescriptor::MuN(n));
                    if *shape != res || *shape != closed {
                        failures.push(format!("{g} over μ_{n}: brute {shape}, resolution {res}, closed {closed}"));
                    }
                }
            }
            Ok(fail_on(failures, format!("{} groups x N in {:?}", groups.len(), H2_MODULI)))
        })(),
    );

    r.record(
        "presentation independence",
        (|| {
            let mut failures = Vec::new();
            let pairs = [(grp(&[6]), grp(&[2, 3])), (grp(&[12]), grp(&[4, 3])), (grp(&[10]), grp(&[2, 5])), (grp(&[2, 6]), grp(&[2, 2, 3]))];
            for (a, b) in &pairs {
                for coeff in [CoeffDescriptor::CStar, CoeffDescriptor::RStar, CoeffDescriptor::MuN(12)] {
                    let (x, y) = (h2_closed_form(a, &coeff), h2_closed_form(b, &coeff));
                    if x != y {
                        failures.push(format!("{a} vs {b} over {coeff}: {x} vs {y}"));
                    }
                }
            }
            Ok(fail_on(failures, format!("{} presentation pairs x 3 coefficient kinds", pairs.len())))
        })(),
    );
    r.out
}

fn algebra_checks(rng: &mut ChaCha8Rng) -> Vec<CheckOutcome> {
    let mut r = Runner { suite: "algebra", out: Vec::new() };
    let cases = [(grp(&[2, 4]), 8u64), (grp(&[3, 3]), 9), (grp(&[2, 2, 2]), 4), (grp(&[6]), 6)];

    r.record(
        "r invariant under rescaling",
        (|| {
            let mut failures = Vec::new();
            for (g, n) in &cases {
                for _ in 0..25 {
                    let c = random_table(g, *n, rng);
                    let lambda = random_lambda(g, *n, rng);
                    let moved = c.rescale(&lambda)?;
                    let k = g.order();
                    let same = (0..k).all(|a| (0..k).all(|b| (0..k).all(|x| c.r_at(a, b, x) == moved.r_at(a, b, x))));
                    if !same {
                        failures.push(format!("{g} over μ_{n}"));
                    }
                }
            }
            Ok(fail_on(failures, format!("{} random pairs", cases.len() * 25)))
        })(),
    );

    r.record(
        "cocycle equivalence",
        (|| {
            let g = grp(&[2, 2]);
            let d2 = boundary_matrix(&g, 2)?;
            let mut failures = Vec::new();
            for bits in 0u32..512 {
                let c = StructureConstants::from_fn(g.clone(), 2, |a, b| {
                    if a == 0 || b == 0 {
                        0
                    } else {
                        ((bits >> ((a - 1) * 3 + (b - 1))) & 1) as i64
                    }
                })?;
                let in_kernel = d2.apply(&c.cochain()).iter().all(|v| v % 2 == 0.into());
                if in_kernel != c.is_associative() {
                    failures.push(format!("table #{bits}"));
                }
            }
            Ok(fail_on(failures, "all 512 unital tables on Z_2 x Z_2 over μ_2".into()))
        })(),
    );

    r.record(
        "q antisymmetry",
        (|| {
            let mut failures = Vec::new();
            for (g, n) in &cases {
                for _ in 0..10 {
                    let c = random_table(g, *n, rng);
                    let k = g.order();
                    let ok = (0..k).all(|a| c.q_at(a, a) == 0 && (0..k).all(|b| (c.q_at(a, b) + c.q_at(b, a)) % n == 0));
                    if !ok {
                        failures.push(format!("{g} over μ_{n}"));
                    }
                }
            }
            Ok(fail_on(failures, format!("{} random tables", cases.len() * 10)))
        })(),
    );

    r.record(
        "standardization is a retraction",
        (|| {
            let mut failures = Vec::new();
            for (g, n) in &cases {
                let mut inputs: Vec<StructureConstants> = (0..10).map(|_| random_sym(g, *n, rng)).collect::<Result<_>>()?;
                if let Ok(reps) = enumerate_assoc_representatives(g, *n) {
                    inputs.extend(reps);
                }
                for c in inputs {
                    let (std, _) = c.to_standard_basis()?;
                    let lambda = random_lambda(g, *n, rng);
                    let (again, _) = std.rescale(&lambda)?.to_standard_basis()?;
                    if again != std || !std.is_standard() {
                        failures.push(format!("{g} over μ_{n}"));
                    }
                }
            }
            Ok(fail_on(failures, "symmetric and associative inputs".into()))
        })(),
    );
    r.out
}

fn classify_checks(
    groups: &[GroupSpec],
    brute: &BTreeMap<String, Vec<AbelianGroupShape>>,
    rng: &mut ChaCha8Rng,
) -> Vec<CheckOutcome> {
    let mut r = Runner { suite: "classify", out: Vec::new() };

    r.record(
        "associative counts match cohomology",
        (|| {
            let mut failures = Vec::new();
            for g in groups {
                let c = count_assoc_classes(g, Field::Complex);
                let real = count_assoc_classes(g, Field::Real);
                let cstar = h2_closed_form(g, &CoeffDescriptor::CStar).order();
                let rstar = h2_closed_form(g, &CoeffDescriptor::RStar).order();
                let mu2 = brute[&g.to_string()][0].order();
                if c != cstar || real != rstar || real != mu2 {
                    failures.push(format!("{g}: C {c} vs {cstar}; R {real} vs {rstar} vs {mu2}"));
                }
            }
            Ok(fail_on(failures, format!("{} groups", groups.len())))
        })(),
    );

    let rep_cases = [(grp(&[2, 2]), 2u64), (grp(&[2, 2, 2]), 2), (grp(&[2, 4]), 4), (grp(&[3, 3]), 3), (grp(&[4, 4]), 4), (grp(&[3, 5]), 1), (grp(&[2, 6]), 2)];
    r.record(
        "representative soundness",
        (|| {
            let mut failures = Vec::new();
            for (g, n) in &rep_cases {
                let reps = enumerate_assoc_representatives(g, *n)?;
                if BigUint::from(reps.len()) != count_assoc_classes(g, Field::Complex) {
                    failures.push(format!("{g}: {} representatives", reps.len()));
                }
                for (i, a) in reps.iter().enumerate() {
                    if !a.is_associative() || !a.is_symmetric_12() {
                        failures.push(format!("{g}: representative {i} fails r ≡ 1"));
                    }
                    for b in &reps[i + 1..] {
                        if iso_test_associative(a, b)?.is_some() {
                            failures.push(format!("{g}: two representatives are isomorphic"));
                        }
                    }
                }
            }
            Ok(fail_on(failures, format!("{} groups", rep_cases.len())))
        })(),
    );

    r.record(
        "coboundary modulus is sufficient",
        (|| {
            let mut failures = Vec::new();
            for (g, n) in &rep_cases {
                let mut pool = enumerate_assoc_representatives(g, *n)?;
                let m = n * g.exponent();
                for i in 0..pool.len() {
                    for _ in 0..4 {
                        if let Ok(moved) = pool[i].rescale(&random_lambda(g, m, rng)) {
                            pool.push(moved);
                        }
                    }
                }
                let mut classes: Vec<StructureConstants> = Vec::new();
                for c in pool {
                    let mut found = false;
                    for rep in &classes {
                        if iso_test_associative(&c, rep)?.is_some() {
                            found = true;
                            break;
                        }
                    }
                    if !found {
                        classes.push(c);
                    }
                }
                if BigUint::from(classes.len()) != count_assoc_classes(g, Field::Complex) {
                    failures.push(format!("{g} over μ_{n}: {} classes", classes.len()));
                }
            }
            Ok(fail_on(failures, "class count under the coboundary test equals the count over C".into()))
        })(),
    );

    r.record(
        "free slots reproduce the counting formula",
        (|| {
            let mut failures = Vec::new();
            for g in groups {
                for n in [2u64, 4, 6, 12] {
                    let product: BigUint = free_slots(g).iter().map(|s| BigUint::from(s.choices(g, n))).product();
                    let formula = count_sym_classes(g, &CoeffDescriptor::MuN(n))?;
                    if product != formula {
                        failures.push(format!("{g} over μ_{n}: {product} vs {formula}"));
                    }
                }
            }
            Ok(fail_on(failures, format!("{} groups", groups.len())))
        })(),
    );

    let sym_cases = [(grp(&[2, 2]), 2u64), (grp(&[2, 3]), 6), (grp(&[3]), 3), (grp(&[4]), 4), (grp(&[2, 2]), 4), (grp(&[5]), 5)];
    r.record(
        "symmetric soundness",
        (|| {
            let mut failures = Vec::new();
            for (g, n) in &sym_cases {
                let coeff = CoeffDescriptor::MuN(*n);
                let tables = enumerate_sym_classes(g, &coeff, u64::MAX)?;
                let distinct: HashSet<&[u64]> = tables.iter().map(|c| c.exponents()).collect();
                if distinct.len() != tables.len() || BigUint::from(tables.len()) != count_sym_classes(g, &coeff)? {
                    failures.push(format!("{g} over μ_{n}: {} tables, {} distinct", tables.len(), distinct.len()));
                }
                if let Some(bad) = tables.iter().position(|c| !c.is_symmetric_12() || !c.is_standard()) {
                    failures.push(format!("{g} over μ_{n}: table {bad} is not symmetric and standard"));
                }
            }
            Ok(fail_on(failures, format!("{} instances", sym_cases.len())))
        })(),
    );

    r.record(
        "brute-force oracle agreement",
        (|| {
            let mut failures = Vec::new();
            let cases = [(grp(&[2]), 2u64), (grp(&[3]), 3), (grp(&[2, 2]), 2), (grp(&[4]), 2), (grp(&[3]), 9), (grp(&[4]), 4)];
            for (g, n) in &cases {
                let coeff = CoeffDescriptor::MuN(*n);
                let brute = brute_force_sym_classes(g, &coeff)?;
                let formula = count_sym_classes(g, &coeff)?;
                if BigUint::from(brute) != formula {
                    failures.push(format!("{g} over μ_{n}: brute {brute}, formula {formula}"));
                }
            }
            Ok(fail_on(failures, format!("{} instances", cases.len())))
        })(),
    );

    r.record(
        "coprime collapse",
        (|| {
            let mut failures = Vec::new();
            for (m, n) in [(2u64, 3u64), (3, 4), (2, 5)] {
                for big_n in [m * n, 2 * m * n] {
                    let coeff = CoeffDescriptor::MuN(big_n);
                    let split = count_sym_classes(&grp(&[m, n]), &coeff)?;
                    let cyclic = count_sym_classes(&grp(&[m * n]), &coeff)?;
                    if split != cyclic {
                        failures.push(format!("Z_{m} x Z_{n} over μ_{big_n}: {split} vs {cyclic}"));
                    }
                }
            }
            Ok(fail_on(failures, "(2,3), (3,4), (2,5) with N in {mn, 2mn}".into()))
        })(),
    );

    r.record(
        "standard form decides symmetric isomorphism",
        (|| {
            let mut failures = Vec::new();
            for (g, n) in [(grp(&[2, 4]), 8u64), (grp(&[2, 2, 2]), 4), (grp(&[3, 3]), 9)] {
                for _ in 0..20 {
                    let c = random_sym(&g, n, rng)?;
                    let moved = c.rescale(&random_lambda(&g, n, rng))?;
                    if !iso_test_symmetric(&c, &moved)? || moved.to_standard_basis()?.0 != c {
                        failures.push(format!("{g} over μ_{n}"));
                    }
                }
            }
            Ok(fail_on(failures, "random symmetric tables and rescalings".into()))
        })(),
    );

    r.record(
        "symmetric and associative isomorphism tests agree",
        (|| {
            let g = grp(&[2, 2]);
            let tables: Vec<StructureConstants> = (0u32..512)
                .map(|bits| {
                    StructureConstants::from_fn(g.clone(), 2, |a, b| {
                        if a == 0 || b == 0 {
                            0
                        } else {
                            ((bits >> ((a - 1) * 3 + (b - 1))) & 1) as i64
                        }
                    })
                })
                .collect::<Result<_>>()?;
            let assoc: Vec<&StructureConstants> = tables.iter().filter(|c| c.is_associative()).collect();
            let mut failures = Vec::new();
            for a in &assoc {
                for b in &assoc {
                    if iso_test_symmetric(a, b)? != iso_test_associative(a, b)?.is_some() {
                        failures.push("disagreement");
                    }
                }
            }
            Ok(fail_on(failures, format!("{} associative tables pairwise", assoc.len())))
        })(),
    );
    r.out
}

/// Runs the requested suite with a fixed seed.
pub fn run_suite(suite: Suite) -> Vec<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7769_7374);
    let groups = small_groups();
    let needs_brute = matches!(suite, Suite::All | Suite::Cohomology | Suite::Classify);
    let mut brute = BTreeMap::new();
    let mut out = Vec::new();
    if needs_brute {
        for g in &groups {
            match h2_bruteforce_many(g, &H2_MODULI) {
                Ok(shapes) => {
                    brute.insert(g.to_string(), shapes);
                }
                Err(e) => {
                    out.push(CheckOutcome {
                        suite: "cohomology",
                        name: "brute-force H^2",
                        passed: false,
                        detail: format!("{g}: {e}"),
                    });
                    return out;
                }
            }
        }
    }
    if matches!(suite, Suite::All | Suite::Cohomology) {
        out.extend(cohomology_checks(&groups, &brute));
    }
    if matches!(suite, Suite::All | Suite::Algebra) {
        out.extend(algebra_checks(&mut rng));
    }
    if matches!(suite, Suite::All | Suite::Classify) {
        out.extend(classify_checks(&groups, &brute, &mut rng));
    }
    out
}
