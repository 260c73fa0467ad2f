//! (1,2)-symmetric twisted algebras: the free-parameter description of standard tables,
//! reconstruction, enumeration, counting and a brute-force oracle.
//!
//! Let `a_1..a_k` be the generators of the nontrivial factors (trivial factors are
//! ignored throughout; they do not change element indices). A standard symmetric table
//! is pinned down by
//!
//! * `C(a_j, a_i)` for `j < i`, an `n_i n_j`-th root of unity, with `C(a_j, a_i) = 1`
//!   for `j > i` and `C(a_i, a_i) = 1`;
//! * for every `x ∉ {e, a_1, .., a_k}` and every `i`, the value `C(x, a_i)`, which is an
//!   `n_i`-th root twist `ω` of the base `P = ∏_{j<i} C(a_j, a_i)^{x_j}`, or of
//!   `P^{-(n_i - 1)}` when `x_i = n_i - 1`.
//!
//! These are the [`free_slots`]. Everything else follows level by level: the rows of a
//! new level against the previous subgroup by peeling one generator at a time,
//!
//! `C(x, y a_i) = C(x, y) C(x, a_i) C(y, a_i)^{-1} C(y, g a_i) C(y, g)^{-1}`
//!
//! (`g` the part of `x` below the new level), and then the columns along the new
//! generator `a = a_t` of order `n` by
//!
//! `C(x, g' a^l) = C(x, g') C(x, a)^l ∏_{τ<l} c(x g' a^τ) c(x)^{-1} c(g' a^τ)^{-1}`,
//!
//! where `c(h) = α_{h a^{-(n-1)}}` if `h` has `a`-exponent `n - 1` and `1` otherwise,
//! and `α_g = C(g, a)^{-n}`.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::algebra::{Layout, StructureConstants};
use crate::classify::assoc::check_same_space;
use crate::coeff::CoeffDescriptor;
use crate::error::{guard, Error, Result};
use crate::group::GroupSpec;

/// Default bound on `N^{(|G|-1)^2}` for [`brute_force_sym_classes`].
pub const BRUTE_FORCE_TABLE_LIMIT: u128 = 1 << 24;

/// One free choice. Generator positions refer to the caller's factor list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Slot {
    /// `C(a_low, a_high)`, constrained by `C^{n_low n_high} = 1`.
    Pair { low: usize, high: usize },
    /// The twist `ω` of `C(x, a_generator)`, constrained by `ω^{n_generator} = 1`.
    Twist { element: usize, generator: usize },
}

impl Slot {
    /// The `m` with `value^m = 1`.
    pub fn root_order(&self, group: &GroupSpec) -> u64 {
        let n = group.moduli();
        match *self {
            Slot::Pair { low, high } => n[low] * n[high],
            Slot::Twist { generator, .. } => n[generator],
        }
    }

    /// Number of admissible values in `μ_N`.
    pub fn choices(&self, group: &GroupSpec, modulus: u64) -> u64 {
        self.root_order(group).gcd(&modulus)
    }

    fn describe(&self, group: &GroupSpec) -> String {
        match *self {
            Slot::Pair { low, high } => format!(
                "C(a_{}, a_{})^{} = 1",
                low + 1,
                high + 1,
                self.root_order(group)
            ),
            Slot::Twist { element, generator } => format!(
                "ω^{} = 1 for C({}, a_{})",
                self.root_order(group),
                group.element_at(element),
                generator + 1
            ),
        }
    }
}

fn nontrivial_positions(group: &GroupSpec) -> Vec<usize> {
    (0..group.rank()).filter(|&i| group.moduli()[i] > 1).collect()
}

/// The free choices in their fixed order: first the pairs `(j, i)`, `j < i`, ordered by
/// `i` then `j`; then the twists, ordered by generator and then by element index.
pub fn free_slots(group: &GroupSpec) -> Vec<Slot> {
    let gens = nontrivial_positions(group);
    let layout = Layout::new(group);
    let mut out = Vec::new();
    for (p, &i) in gens.iter().enumerate() {
        for &j in &gens[..p] {
            out.push(Slot::Pair { low: j, high: i });
        }
    }
    let special: HashSet<usize> = std::iter::once(0).chain(gens.iter().map(|&i| layout.stride[i])).collect();
    for &i in &gens {
        for x in 0..layout.order {
            if !special.contains(&x) {
                out.push(Slot::Twist { element: x, generator: i });
            }
        }
    }
    out
}

/// A point in the parameter space of standard (1,2)-symmetric tables, one value per
/// [`free_slots`] entry (exponents mod `N`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymClassParams {
    group: GroupSpec,
    modulus: u64,
    values: Vec<u64>,
}

impl fmt::Display for SymClassParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / μ_{}: [", self.group, self.modulus)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl SymClassParams {
    /// Validates every order constraint; a violation is a contract error naming it.
    pub fn new(group: GroupSpec, modulus: u64, values: Vec<u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Structural("μ_N needs N >= 1".into()));
        }
        let slots = free_slots(&group);
        if values.len() != slots.len() {
            return Err(Error::Structural(format!(
                "{group} has {} free slots, got {} values",
                slots.len(),
                values.len()
            )));
        }
        for (slot, &v) in slots.iter().zip(&values) {
            if v >= modulus {
                return Err(Error::Structural(format!("{v} is not an exponent mod {modulus}")));
            }
            let m = slot.root_order(&group) as u128;
            if (m * v as u128) % modulus as u128 != 0 {
                return Err(Error::Contract(format!(
                    "{} violated by ζ_{modulus}^{v}",
                    slot.describe(&group)
                )));
            }
        }
        Ok(Self { group, modulus, values })
    }

    /// All choices trivial.
    pub fn trivial(group: GroupSpec, modulus: u64) -> Result<Self> {
        let len = free_slots(&group).len();
        Self::new(group, modulus, vec![0; len])
    }

    /// Reads the parameters off a table in standard form. Feeding the result to
    /// [`reconstruct_from_params`] returns the same table exactly when the input is a
    /// standard (1,2)-symmetric table.
    pub fn from_table(c: &StructureConstants) -> Result<Self> {
        let group = c.group().clone();
        let n = c.modulus();
        let layout = Layout::new(&group);
        let slots = free_slots(&group);
        let mut values = Vec::with_capacity(slots.len());
        let mut pairs = PairTable::new(group.rank());
        for slot in &slots {
            match *slot {
                Slot::Pair { low, high } => {
                    let v = c.at(layout.stride[low], layout.stride[high]);
                    pairs.set(low, high, v);
                    values.push(v);
                }
                Slot::Twist { element, generator } => {
                    let base = twist_base(&layout, &pairs, n, element, generator);
                    values.push((c.at(element, layout.stride[generator]) + n - base) % n);
                }
            }
        }
        Self::new(group, n, values)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn slots(&self) -> Vec<Slot> {
        free_slots(&self.group)
    }
}

/// `C(a_j, a_i)` for `j < i`, by factor position.
struct PairTable {
    k: usize,
    v: Vec<u64>,
}

impl PairTable {
    fn new(k: usize) -> Self {
        Self { k, v: vec![0; k * k] }
    }

    fn set(&mut self, j: usize, i: usize, x: u64) {
        self.v[j * self.k + i] = x;
    }

    fn get(&self, j: usize, i: usize) -> u64 {
        self.v[j * self.k + i]
    }
}

/// Exponent of the base of `C(x, a_i)`: `P = Σ_{j<i} x_j C(a_j, a_i)`, replaced by
/// `-(n_i - 1) P` when `x_i = n_i - 1`.
fn twist_base(layout: &Layout, pairs: &PairTable, n: u64, x: usize, i: usize) -> u64 {
    let p = (0..i).fold(0u64, |acc, j| (acc + layout.coord(x, j) as u64 * pairs.get(j, i)) % n);
    let ni = layout.moduli[i];
    if layout.coord(x, i) as u64 == ni - 1 {
        ((ni - 1) % n * (n - p)) % n
    } else {
        p
    }
}

/// Builds the standard (1,2)-symmetric table described by `p`.
pub fn reconstruct_from_params(p: &SymClassParams) -> Result<StructureConstants> {
    let p = SymClassParams::new(p.group.clone(), p.modulus, p.values.clone())?;
    let group = &p.group;
    let n = p.modulus as i64;
    let layout = Layout::new(group);
    let order = layout.order;
    let cayley = group.cayley();
    let gens = nontrivial_positions(group);

    let mut pairs = PairTable::new(group.rank());
    let mut twist = vec![0u64; order * group.rank()];
    for (slot, &v) in free_slots(group).iter().zip(&p.values) {
        match *slot {
            Slot::Pair { low, high } => pairs.set(low, high, v),
            Slot::Twist { element, generator } => twist[element * group.rank() + generator] = v,
        }
    }
    // C(x, a_i) for every x and nontrivial i
    let col = |x: usize, i: usize| -> i64 {
        if x == 0 || x == layout.stride[i] {
            return 0;
        }
        if let Some(&j) = gens.iter().find(|&&j| layout.stride[j] == x) {
            return if j < i { pairs.get(j, i) as i64 } else { 0 };
        }
        ((twist_base(&layout, &pairs, p.modulus, x, i) + twist[x * group.rank() + i]) % p.modulus) as i64
    };

    let mut c = vec![0i64; order * order];
    for &t in &gens {
        let nt = layout.moduli[t] as usize;
        let stride = layout.stride[t];
        let level = layout.lower(t + 1);
        let below = layout.lower(t);
        let mut alpha = vec![0i64; order];
        for &g in &below {
            alpha[g] = (-(nt as i64) * col(g, t)).rem_euclid(n);
        }
        let wrap = |h: usize| -> i64 {
            if layout.coord(h, t) == nt - 1 {
                alpha[h - (nt - 1) * stride]
            } else {
                0
            }
        };
        // rows of the new level against the previous subgroup
        for &x in &level {
            let s = layout.coord(x, t);
            if s == 0 {
                continue;
            }
            let g = x - s * stride;
            for &gp in below.iter().skip(1) {
                let i = (0..t).rev().find(|&i| layout.coord(gp, i) > 0).expect("gp is not the identity");
                let y = gp - layout.stride[i];
                let ai = layout.stride[i];
                let v = c[x * order + y] + col(x, i) - c[y * order + ai] + c[y * order + cayley.mul(g, ai)]
                    - c[y * order + g];
                c[x * order + gp] = v.rem_euclid(n);
            }
        }
        // every row of the level against the columns along a_t
        for &x in &level {
            let cx = wrap(x);
            let ca = col(x, t);
            for &gp in &below {
                let mut acc = c[x * order + gp];
                for l in 1..nt {
                    let h = gp + (l - 1) * stride;
                    acc += ca + wrap(cayley.mul(x, h)) - cx - wrap(h);
                    c[x * order + gp + l * stride] = acc.rem_euclid(n);
                }
            }
        }
    }
    let table = c.into_iter().map(|v| v.rem_euclid(n) as u64).collect();
    StructureConstants::new(group.clone(), p.modulus, table)
}

/// Lexicographic iterator over all parameter tuples (first slot slowest).
pub struct SymParamsIter {
    group: GroupSpec,
    modulus: u64,
    steps: Vec<u64>,
    counts: Vec<u64>,
    digits: Vec<u64>,
    done: bool,
}

impl Iterator for SymParamsIter {
    type Item = SymClassParams;

    fn next(&mut self) -> Option<SymClassParams> {
        if self.done {
            return None;
        }
        let values = self.digits.iter().zip(&self.steps).map(|(d, s)| d * s).collect();
        let item = SymClassParams { group: self.group.clone(), modulus: self.modulus, values };
        let mut pos = self.digits.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.digits[pos] += 1;
            if self.digits[pos] < self.counts[pos] {
                break;
            }
            self.digits[pos] = 0;
        }
        Some(item)
    }
}

pub fn sym_params(group: &GroupSpec, modulus: u64) -> SymParamsIter {
    let slots = free_slots(group);
    let counts: Vec<u64> = slots.iter().map(|s| s.choices(group, modulus)).collect();
    let steps = counts.iter().map(|c| modulus / c).collect();
    SymParamsIter {
        group: group.clone(),
        modulus,
        steps,
        digits: vec![0; counts.len()],
        counts,
        done: false,
    }
}

fn finite_modulus(coeff: &CoeffDescriptor) -> Result<u64> {
    match coeff {
        CoeffDescriptor::MuN(n) => Ok(*n),
        other => Err(Error::Unsupported(format!(
            "symmetric classification counts roots of unity and needs a finite μ_N, got {other}"
        ))),
    }
}

/// `∏_i |R_{n_i}|^{|G|-(k+1)} ∏_{i<j} |R_{n_i n_j}|` over the nontrivial factors.
pub fn count_sym_classes(group: &GroupSpec, coeff: &CoeffDescriptor) -> Result<BigUint> {
    finite_modulus(coeff)?;
    let moduli = group.nontrivial_moduli();
    let k = moduli.len() as u64;
    let order = group.order() as u64;
    if k == 0 {
        return Ok(BigUint::one());
    }
    let exp = (order - (k + 1)) as u32;
    let mut total = BigUint::one();
    for (i, &ni) in moduli.iter().enumerate() {
        total *= BigUint::from(coeff.roots_of_unity_count(ni)?).pow(exp);
        for &nj in &moduli[i + 1..] {
            total *= BigUint::from(coeff.roots_of_unity_count(ni * nj)?);
        }
    }
    Ok(total)
}

/// One standard table per class, in parameter order. Fails when the class count
/// exceeds `cap`.
pub fn enumerate_sym_classes(group: &GroupSpec, coeff: &CoeffDescriptor, cap: u64) -> Result<Vec<StructureConstants>> {
    let modulus = finite_modulus(coeff)?;
    let count = count_sym_classes(group, coeff)?;
    if count > BigUint::from(cap) {
        return Err(Error::Resource {
            what: format!("symmetric classes of {group} over {coeff}"),
            needed: count.to_u128().unwrap_or(u128::MAX),
            limit: cap as u128,
        });
    }
    sym_params(group, modulus).map(|p| reconstruct_from_params(&p)).collect()
}

/// Graded isomorphism of (1,2)-symmetric tables: equal standard forms.
pub fn iso_test_symmetric(c1: &StructureConstants, c2: &StructureConstants) -> Result<bool> {
    check_same_space(c1, c2)?;
    for (name, c) in [("first", c1), ("second", c2)] {
        if let Some((a, b, x)) = c.symmetry_witness() {
            let g = c.group();
            return Err(Error::Contract(format!(
                "{name} table is not (1,2)-symmetric: r({a}, {b}, {x}) ≠ r({b}, {a}, {x})",
                a = g.element_at(a),
                b = g.element_at(b),
                x = g.element_at(x)
            )));
        }
    }
    Ok(c1.to_standard_basis()?.0 == c2.to_standard_basis()?.0)
}

/// Scans every unital table `G x G -> μ_N`, keeps the (1,2)-symmetric ones and counts
/// their distinct standard forms.
pub fn brute_force_sym_classes(group: &GroupSpec, coeff: &CoeffDescriptor) -> Result<u64> {
    let modulus = finite_modulus(coeff)?;
    let order = group.order();
    let free = (order - 1) * (order - 1);
    let needed = (modulus as u128).checked_pow(free as u32).unwrap_or(u128::MAX);
    guard("unital tables to scan", needed, BRUTE_FORCE_TABLE_LIMIT)?;
    let cells: Vec<usize> = (1..order).flat_map(|a| (1..order).map(move |b| a * order + b)).collect();
    let mut table = StructureConstants::trivial(group.clone(), modulus)?;
    let mut seen = HashSet::new();
    loop {
        if table.is_symmetric_12() {
            seen.insert(table.to_standard_basis()?.0.exponents().to_vec());
        }
        let mut pos = cells.len();
        loop {
            if pos == 0 {
                return Ok(seen.len() as u64);
            }
            pos -= 1;
            let slot = &mut table.table_mut()[cells[pos]];
            *slot += 1;
            if *slot < modulus {
                break;
            }
            *slot = 0;
        }
    }
}
