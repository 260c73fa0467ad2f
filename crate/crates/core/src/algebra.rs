//! `G`-graded twisted algebras given by their structure constants.
//!
//! A table `C : G x G -> μ_N` records `w_a · w_b = C(a,b) w_{ab}`. Entries are stored as
//! exponents mod `N` in a dense row-major `|G| x |G|` array indexed by
//! [`GroupSpec::enumerate`]. Everything below is additive in those exponents, so
//! `q(a,b) = C(a,b) - C(b,a)` and
//! `r(a,b,c) = C(b,c) - C(ab,c) + C(a,bc) - C(a,b)`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::coeff::{CoeffDescriptor, CoeffElement};
use crate::error::{Error, Result};
use crate::group::{Cayley, GroupElement, GroupSpec};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "TableDoc", into = "TableDoc")]
pub struct StructureConstants {
    group: GroupSpec,
    modulus: u64,
    table: Vec<u64>,
    cayley: Cayley,
}

/// On-disk layout: `{"group":[..],"coeff":{"muN":N},"table":[[..],..]}`.
#[derive(Serialize, Deserialize)]
struct TableDoc {
    group: GroupSpec,
    coeff: CoeffDescriptor,
    table: Vec<Vec<u64>>,
}

impl TryFrom<TableDoc> for StructureConstants {
    type Error = Error;

    fn try_from(doc: TableDoc) -> Result<Self> {
        let modulus = match doc.coeff {
            CoeffDescriptor::MuN(n) => n,
            other => {
                return Err(Error::Unsupported(format!("structure constants need a finite μ_N, got {other}")))
            }
        };
        let order = doc.group.order();
        if doc.table.len() != order || doc.table.iter().any(|row| row.len() != order) {
            return Err(Error::Structural(format!("table for {} must be {order} x {order}", doc.group)));
        }
        Self::new(doc.group, modulus, doc.table.into_iter().flatten().collect())
    }
}

impl From<StructureConstants> for TableDoc {
    fn from(c: StructureConstants) -> Self {
        let order = c.order();
        TableDoc {
            coeff: CoeffDescriptor::MuN(c.modulus),
            table: c.table.chunks(order).map(|r| r.to_vec()).collect(),
            group: c.group,
        }
    }
}

impl PartialEq for StructureConstants {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.modulus == other.modulus && self.table == other.table
    }
}

impl Eq for StructureConstants {}

impl std::hash::Hash for StructureConstants {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.group.hash(state);
        self.modulus.hash(state);
        self.table.hash(state);
    }
}

impl fmt::Display for StructureConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} over μ_{}", self.group, self.modulus)?;
        for row in self.table.chunks(self.order()) {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl StructureConstants {
    /// Builds a table from row-major exponents. Entries must lie in `[0, N)` and the
    /// table must be unital (`C(e,g) = C(g,e) = 1`).
    pub fn new(group: GroupSpec, modulus: u64, table: Vec<u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Structural("μ_N needs N >= 1".into()));
        }
        let order = group.order();
        if table.len() != order * order {
            return Err(Error::Structural(format!(
                "table for {group} needs {} entries, got {}",
                order * order,
                table.len()
            )));
        }
        if let Some(pos) = table.iter().position(|&x| x >= modulus) {
            return Err(Error::Structural(format!(
                "entry ({}, {}) = {} is not an exponent mod {modulus}",
                pos / order,
                pos % order,
                table[pos]
            )));
        }
        for g in 0..order {
            if table[g] != 0 || table[g * order] != 0 {
                return Err(Error::Contract(format!(
                    "table is not unital at {}: C(e,g) = C(g,e) = 1 is required",
                    group.element_at(g)
                )));
            }
        }
        let cayley = group.cayley();
        Ok(Self { group, modulus, table, cayley })
    }

    /// The table `C ≡ 1`.
    pub fn trivial(group: GroupSpec, modulus: u64) -> Result<Self> {
        let order = group.order();
        Self::new(group, modulus, vec![0; order * order])
    }

    /// Builds the table from a function on element indices; values are reduced mod `N`.
    pub fn from_fn<F: FnMut(usize, usize) -> i64>(group: GroupSpec, modulus: u64, mut f: F) -> Result<Self> {
        let order = group.order();
        let n = modulus as i64;
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(f(a, b).rem_euclid(n) as u64);
            }
        }
        Self::new(group, modulus, table)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeff(&self) -> CoeffDescriptor {
        CoeffDescriptor::MuN(self.modulus)
    }

    pub fn order(&self) -> usize {
        self.cayley.order()
    }

    /// Row-major exponents.
    pub fn exponents(&self) -> &[u64] {
        &self.table
    }

    /// Raw access for scans that walk through many tables; callers keep row and column
    /// `e` at zero.
    pub(crate) fn table_mut(&mut self) -> &mut [u64] {
        &mut self.table
    }

    pub fn cayley(&self) -> &Cayley {
        &self.cayley
    }

    /// Exponent of `C(a,b)` by element index.
    #[inline]
    pub fn at(&self, a: usize, b: usize) -> u64 {
        self.table[a * self.order() + b]
    }

    pub fn get(&self, a: &GroupElement, b: &GroupElement) -> Result<CoeffElement> {
        let (a, b) = (self.group.index_of(a)?, self.group.index_of(b)?);
        Ok(self.elem(self.at(a, b)))
    }

    fn elem(&self, exponent: u64) -> CoeffElement {
        CoeffElement::new(self.modulus, exponent)
    }

    #[inline]
    fn sub(&self, x: u64, y: u64) -> u64 {
        (x + self.modulus - y) % self.modulus
    }

    /// Exponent of `q(a,b)` by index.
    pub fn q_at(&self, a: usize, b: usize) -> u64 {
        self.sub(self.at(a, b), self.at(b, a))
    }

    /// Exponent of `r(a,b,c)` by index.
    pub fn r_at(&self, a: usize, b: usize, c: usize) -> u64 {
        let m = &self.cayley;
        let plus = self.at(b, c) + self.at(a, m.mul(b, c));
        let minus = self.at(m.mul(a, b), c) + self.at(a, b);
        (plus + 2 * self.modulus - minus) % self.modulus
    }

    /// `q(a,b) = C(a,b) C(b,a)^{-1}`.
    pub fn q_fn(&self, a: &GroupElement, b: &GroupElement) -> Result<CoeffElement> {
        let (a, b) = (self.group.index_of(a)?, self.group.index_of(b)?);
        Ok(self.elem(self.q_at(a, b)))
    }

    /// `r(a,b,c) = C(b,c) C(ab,c)^{-1} C(a,bc) C(a,b)^{-1}`, so that
    /// `w_a (w_b w_c) = r(a,b,c) (w_a w_b) w_c`.
    pub fn r_fn(&self, a: &GroupElement, b: &GroupElement, c: &GroupElement) -> Result<CoeffElement> {
        let (a, b, c) = (self.group.index_of(a)?, self.group.index_of(b)?, self.group.index_of(c)?);
        Ok(self.elem(self.r_at(a, b, c)))
    }

    /// First triple with `r(a,b,c) ≠ 1`, if any.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.order();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.r_at(a, b, c) != 0 {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.at(a, b) == self.at(b, a)))
    }

    /// First triple with `r(a,b,c) ≠ r(b,a,c)`, if any.
    pub fn symmetry_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.order();
        for a in 0..n {
            for b in a + 1..n {
                for c in 0..n {
                    if self.r_at(a, b, c) != self.r_at(b, a, c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// `r(a,b,c) = r(b,a,c)` for every triple.
    pub fn is_symmetric_12(&self) -> bool {
        self.symmetry_witness().is_none()
    }

    /// `C'(a,b) = λ(a) λ(b) λ(ab)^{-1} C(a,b)`.
    ///
    /// The computation runs in `μ_L`, `L = lcm(N, M)`; the result must land back in `μ_N`.
    pub fn rescale(&self, lambda: &BasisRescaling) -> Result<Self> {
        if lambda.group != self.group {
            return Err(Error::Structural(format!(
                "rescaling is defined on {}, table on {}",
                lambda.group, self.group
            )));
        }
        let l = self.modulus.lcm(&lambda.modulus);
        let (sc, sl) = (l / self.modulus, l / lambda.modulus);
        let n = self.order();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let d = (lambda.values[a] + lambda.values[b]) as u128 + (lambda.modulus - lambda.values[self.cayley.mul(a, b)]) as u128;
                let v = (self.at(a, b) as u128 * sc as u128 + d * sl as u128) % l as u128;
                if v % sc as u128 != 0 {
                    return Err(Error::Unsupported(format!(
                        "rescaled entry at ({}, {}) is not in μ_{}",
                        self.group.element_at(a),
                        self.group.element_at(b),
                        self.modulus
                    )));
                }
                table.push((v / sc as u128) as u64);
            }
        }
        Self::new(self.group.clone(), self.modulus, table)
    }

    /// Whether every cyclic spine satisfies the standard-basis identities: for each
    /// nontrivial factor `t` with generator `a = a_t` of order `n`, and every `g` in the
    /// subgroup generated by `a_1..a_{t-1}`,
    /// `C(a, g a^j) = 1` for `j ≤ n-2`, and `C(a, a^{n-1}) = 1`.
    pub fn is_standard(&self) -> bool {
        let layout = Layout::new(&self.group);
        for t in 0..layout.rank() {
            let n = layout.moduli[t] as usize;
            if n == 1 {
                continue;
            }
            let a = layout.stride[t];
            for g in layout.lower(t) {
                for j in 0..n - 1 {
                    if self.at(a, g + j * layout.stride[t]) != 0 {
                        return false;
                    }
                }
            }
            if self.at(a, (n - 1) * layout.stride[t]) != 0 {
                return false;
            }
        }
        true
    }

    /// Rescales to a standard basis, returning the new table and the rescaling used.
    ///
    /// Factors are processed left to right. At factor `t`, with `a = a_t` of order `n`, the
    /// generator is scaled by an `n`-th root `x` of the inverse spine product
    /// `∏_{j<n} C(a, a^j)`, and then `w_{g a^j} := w_a · w_{g a^{j-1}}` for every `g` in
    /// the span of the earlier generators. `λ` takes values in `μ_M`, `M = N·exp(G)`;
    /// since `x` only enters coboundaries through `x^n`, the result stays in `μ_N`.
    /// Elements of earlier levels are untouched, so earlier spines stay standard, and a
    /// standard table yields `λ ≡ 1`.
    pub fn to_standard_basis(&self) -> Result<(Self, BasisRescaling)> {
        let layout = Layout::new(&self.group);
        let e = self.group.exponent();
        let m = self.modulus * e;
        let order = self.order();
        let mut c: Vec<u64> = self.table.iter().map(|&x| x * e).collect();
        let mut total = vec![0u64; order];
        for t in 0..layout.rank() {
            let n = layout.moduli[t];
            if n == 1 {
                continue;
            }
            let stride = layout.stride[t];
            let a = stride;
            let spine: u64 = (0..n as usize).map(|j| c[a * order + j * stride] / e).sum::<u64>() % self.modulus;
            let x = (m - ((e / n) * spine) % m) % m;
            let mut lambda = vec![0u64; order];
            for g in layout.lower(t) {
                for j in 1..n as usize {
                    let prev = g + (j - 1) * stride;
                    lambda[g + j * stride] = (x + lambda[prev] + c[a * order + prev]) % m;
                }
            }
            for u in 0..order {
                for v in 0..order {
                    let w = self.cayley.mul(u, v);
                    c[u * order + v] = (c[u * order + v] + lambda[u] + lambda[v] + m - lambda[w]) % m;
                }
            }
            for (acc, l) in total.iter_mut().zip(&lambda) {
                *acc = (*acc + l) % m;
            }
        }
        if let Some(pos) = c.iter().position(|x| x % e != 0) {
            return Err(Error::Unsupported(format!(
                "standardized entry at ({}, {}) is not in μ_{}",
                self.group.element_at(pos / order),
                self.group.element_at(pos % order),
                self.modulus
            )));
        }
        let table = c.into_iter().map(|x| x / e).collect();
        let std = Self::new(self.group.clone(), self.modulus, table)?;
        let lambda = BasisRescaling { group: self.group.clone(), modulus: m, values: total };
        Ok((std, lambda))
    }

    /// `α_g = C(a_k, g a_k^{n_k - 1})` for a standard table, where `a_k` is the last
    /// nontrivial generator and `g` lies in the span of the earlier ones.
    pub fn alpha_of(&self, g: &GroupElement) -> Result<CoeffElement> {
        let gi = self.group.index_of(g)?;
        if !self.is_standard() {
            return Err(Error::Contract("α_g is only defined for tables in standard form".into()));
        }
        let layout = Layout::new(&self.group);
        let Some(k) = (0..layout.rank()).rev().find(|&t| layout.moduli[t] > 1) else {
            return Err(Error::Contract(format!("{} has no nontrivial factor", self.group)));
        };
        if g.exponents()[k] != 0 {
            return Err(Error::Contract(format!(
                "α_g needs g in the span of the generators before a_{}, got {g}",
                k + 1
            )));
        }
        let n = layout.moduli[k] as usize;
        let col = gi + (n - 1) * layout.stride[k];
        Ok(self.elem(self.at(layout.stride[k], col)))
    }

    /// The exponent vector of the table as a 2-cochain, row-major over pairs `(a,b)`.
    pub fn cochain(&self) -> Vec<i64> {
        self.table.iter().map(|&x| x as i64).collect()
    }
}

/// A graded rescaling `w_g ↦ λ(g) w_g` with `λ` valued in `μ_M`, stored as exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisRescaling {
    group: GroupSpec,
    modulus: u64,
    values: Vec<u64>,
}

impl BasisRescaling {
    /// `values` indexed by enumerate order; `λ(e)` must be 1.
    pub fn new(group: GroupSpec, modulus: u64, values: Vec<u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Structural("μ_M needs M >= 1".into()));
        }
        if values.len() != group.order() {
            return Err(Error::Structural(format!(
                "rescaling on {group} needs {} values, got {}",
                group.order(),
                values.len()
            )));
        }
        if values[0] % modulus != 0 {
            return Err(Error::Contract("a rescaling must fix the unit: λ(e) = 1".into()));
        }
        let values = values.into_iter().map(|v| v % modulus).collect();
        Ok(Self { group, modulus, values })
    }

    pub fn identity(group: GroupSpec, modulus: u64) -> Self {
        let order = group.order();
        Self { group, modulus, values: vec![0; order] }
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

    pub fn value(&self, g: &GroupElement) -> Result<CoeffElement> {
        Ok(CoeffElement::new(self.modulus, self.values[self.group.index_of(g)?]))
    }

    pub fn inverse(&self) -> Self {
        let values = self.values.iter().map(|&v| (self.modulus - v) % self.modulus).collect();
        Self { group: self.group.clone(), modulus: self.modulus, values }
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

/// Mixed-radix bookkeeping for the factor-by-factor constructions.
pub(crate) struct Layout {
    pub moduli: Vec<u64>,
    /// Index offset of one step along factor `t`; also the index of `a_t`.
    pub stride: Vec<usize>,
    pub order: usize,
}

impl Layout {
    pub fn new(group: &GroupSpec) -> Self {
        let moduli = group.moduli().to_vec();
        let mut stride = vec![1usize; moduli.len()];
        for t in (0..moduli.len().saturating_sub(1)).rev() {
            stride[t] = stride[t + 1] * moduli[t + 1] as usize;
        }
        Self { order: group.order(), moduli, stride }
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// Coordinate `t` of the element with index `x`.
    #[inline]
    pub fn coord(&self, x: usize, t: usize) -> usize {
        (x / self.stride[t]) % self.moduli[t] as usize
    }

    /// Indices of the subgroup spanned by `a_1..a_t` (0-based: factors `0..t`), in
    /// enumerate order.
    pub fn lower(&self, t: usize) -> Vec<usize> {
        (0..self.order).filter(|&x| (t..self.rank()).all(|j| self.coord(x, j) == 0)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::boundary_matrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grp(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    /// The quaternion-sign table on Z_2 x Z_2: `C(x,y) = (-1)^{x_1 y_2}`.
    fn quaternion() -> StructureConstants {
        let g = grp("2,2");
        let elems = g.enumerate();
        StructureConstants::from_fn(g, 2, |a, b| (elems[a].exponents()[0] * elems[b].exponents()[1]) as i64).unwrap()
    }

    fn random_table(g: &GroupSpec, n: u64, rng: &mut ChaCha8Rng) -> StructureConstants {
        StructureConstants::from_fn(g.clone(), n, |a, b| if a == 0 || b == 0 { 0 } else { rng.gen_range(0..n as i64) })
            .unwrap()
    }

    fn random_lambda(g: &GroupSpec, m: u64, rng: &mut ChaCha8Rng) -> BasisRescaling {
        let values = (0..g.order()).map(|i| if i == 0 { 0 } else { rng.gen_range(0..m) }).collect();
        BasisRescaling::new(g.clone(), m, values).unwrap()
    }

    #[test]
    fn trivial_table_predicates() {
        let c = StructureConstants::trivial(grp("2,3"), 6).unwrap();
        assert!(c.is_associative() && c.is_commutative() && c.is_symmetric_12());
        let g = c.group().clone();
        for a in g.enumerate() {
            assert!(c.q_fn(&a, &a).unwrap().is_unit());
            for b in g.enumerate() {
                assert!(c.q_fn(&a, &b).unwrap().is_unit());
            }
        }
        let (std, lambda) = c.to_standard_basis().unwrap();
        assert_eq!(std, c);
        assert!(lambda.is_identity());
        assert!(c.is_standard());
    }

    #[test]
    fn quaternion_table() {
        let c = quaternion();
        let g = c.group().clone();
        let (a1, a2) = (g.generator(0), g.generator(1));
        assert_eq!(c.q_fn(&a1, &a2).unwrap(), CoeffElement::new(2, 1));
        assert!(c.is_associative());
        assert!(!c.is_commutative());
        assert!(c.is_symmetric_12());
    }

    #[test]
    fn perturbed_table_is_not_associative() {
        let g = grp("3");
        let mut t = vec![0u64; 9];
        t[4] = 1; // C(a, a) = ζ_3
        let c = StructureConstants::new(g, 3, t).unwrap();
        assert!(!c.is_associative());
    }

    #[test]
    fn rejects_malformed_tables() {
        let g = grp("2");
        assert!(matches!(StructureConstants::new(g.clone(), 2, vec![0, 0, 0]), Err(Error::Structural(_))));
        assert!(matches!(StructureConstants::new(g.clone(), 2, vec![0, 1, 0, 0]), Err(Error::Contract(_))));
        assert!(matches!(StructureConstants::new(g, 2, vec![0, 0, 0, 2]), Err(Error::Structural(_))));
    }

    #[test]
    fn q_is_antisymmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = grp("2,4");
        for _ in 0..20 {
            let c = random_table(&g, 8, &mut rng);
            for a in 0..8 {
                assert_eq!(c.q_at(a, a), 0);
                for b in 0..8 {
                    assert_eq!((c.q_at(a, b) + c.q_at(b, a)) % 8, 0);
                }
            }
        }
    }

    #[test]
    fn rescaling_is_a_group_action_and_preserves_r() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = grp("2,4");
        let c = random_table(&g, 8, &mut rng);
        assert_eq!(c.rescale(&BasisRescaling::identity(g.clone(), 8)).unwrap(), c);
        for _ in 0..50 {
            let c = random_table(&g, 8, &mut rng);
            let l = random_lambda(&g, 8, &mut rng);
            let c2 = c.rescale(&l).unwrap();
            assert_eq!(c2.rescale(&l.inverse()).unwrap(), c);
            for a in 0..8 {
                for b in 0..8 {
                    for x in 0..8 {
                        assert_eq!(c.r_at(a, b, x), c2.r_at(a, b, x));
                    }
                }
            }
        }
    }

    #[test]
    fn rescale_leaving_mu_n_is_an_error() {
        let g = grp("3");
        let c = StructureConstants::trivial(g.clone(), 2).unwrap();
        let l = BasisRescaling::new(g, 6, vec![0, 1, 0]).unwrap();
        assert!(matches!(c.rescale(&l), Err(Error::Unsupported(_))));
    }

    #[test]
    fn standardization_is_idempotent_and_equivalent() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (s, n) in [("2,2", 2u64), ("2,4", 8), ("3", 3), ("2,3", 6), ("2,1,3", 6), ("4", 2)] {
            let g = grp(s);
            for _ in 0..20 {
                let c = random_table(&g, n, &mut rng);
                let (std, lambda) = c.to_standard_basis().unwrap();
                assert!(std.is_standard());
                assert_eq!(c.rescale(&lambda).unwrap(), std);
                let (again, l2) = std.to_standard_basis().unwrap();
                assert_eq!(again, std);
                assert!(l2.is_identity());
            }
        }
    }

    #[test]
    fn standard_form_is_a_retraction() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = grp("2,4");
        for _ in 0..30 {
            let c = random_table(&g, 8, &mut rng);
            let (std, _) = c.to_standard_basis().unwrap();
            let l = random_lambda(&g, 8, &mut rng);
            let (again, _) = std.rescale(&l).unwrap().to_standard_basis().unwrap();
            assert_eq!(again, std);
        }
    }

    #[test]
    fn alpha_of_trivial_and_contract_errors() {
        let g = grp("2,3");
        let c = StructureConstants::trivial(g.clone(), 6).unwrap();
        for x in [g.identity(), g.generator(0)] {
            assert!(c.alpha_of(&x).unwrap().is_unit());
        }
        assert!(matches!(c.alpha_of(&g.generator(1)), Err(Error::Contract(_))));
        let mut t = vec![0u64; 36];
        t[6 + 1] = 1; // C(a_2, a_2) ≠ 1
        let c = StructureConstants::new(g.clone(), 6, t).unwrap();
        assert!(!c.is_standard());
        assert!(matches!(c.alpha_of(&g.identity()), Err(Error::Contract(_))));
    }

    #[test]
    fn cocycle_bridge_on_small_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (s, n) in [("2,2", 2u64), ("3", 3), ("4", 4)] {
            let g = grp(s);
            let d2 = boundary_matrix(&g, 2).unwrap();
            for _ in 0..40 {
                let c = random_table(&g, n, &mut rng);
                let image = d2.apply(&c.cochain());
                let in_kernel = image.iter().all(|v| (v % n as i64).eq(&0.into()));
                assert_eq!(c.is_associative(), in_kernel);
            }
            let c = StructureConstants::trivial(g.clone(), n).unwrap();
            assert!(c.is_associative());
        }
    }

    #[test]
    fn json_round_trip() {
        let c = quaternion();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(text, r#"{"group":[2,2],"coeff":{"muN":2},"table":[[0,0,0,0],[0,0,0,0],[0,1,0,1],[0,1,0,1]]}"#);
        let back: StructureConstants = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<StructureConstants>(r#"{"group":[2],"coeff":"cstar","table":[[0,0],[0,0]]}"#).is_err());
    }
}
