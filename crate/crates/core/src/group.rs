//! Finite abelian groups `Z_{n_1} x ... x Z_{n_k}` given by an explicit list of moduli.
//!
//! Elements are exponent vectors. [`GroupSpec::enumerate`] lists them in lexicographic
//! order (last coordinate varies fastest, identity first); every dense table in this
//! crate is indexed by that order, so `index_of` and `element_at` are the mixed-radix
//! encoding of an exponent vector.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct GroupSpec {
    moduli: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    exponents: Vec<u64>,
}

impl GroupElement {
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl GroupSpec {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::Structural("a group needs at least one cyclic factor".into()));
        }
        if let Some(pos) = moduli.iter().position(|&n| n == 0) {
            return Err(Error::Structural(format!("modulus #{} is 0; every modulus must be >= 1", pos + 1)));
        }
        Ok(Self { moduli })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Number of cyclic factors `k`.
    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().map(|&n| n as usize).product()
    }

    /// Least common multiple of the moduli.
    pub fn exponent(&self) -> u64 {
        self.moduli.iter().fold(1, |acc, n| acc.lcm(n))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { exponents: vec![0; self.rank()] }
    }

    /// The standard generator `a_i` (unit vector in coordinate `i`).
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut exponents = vec![0; self.rank()];
        exponents[i] = 1 % self.moduli[i];
        GroupElement { exponents }
    }

    /// Builds an element, reducing each exponent modulo its factor.
    pub fn element(&self, exponents: &[u64]) -> Result<GroupElement> {
        self.check_arity(exponents.len())?;
        Ok(GroupElement {
            exponents: exponents.iter().zip(&self.moduli).map(|(e, n)| e % n).collect(),
        })
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.exponents.len() == self.rank() && g.exponents.iter().zip(&self.moduli).all(|(e, n)| e < n)
    }

    fn check_member(&self, g: &GroupElement) -> Result<()> {
        if !self.contains(g) {
            return Err(Error::Structural(format!("element {g} does not belong to {self}")));
        }
        Ok(())
    }

    fn check_arity(&self, len: usize) -> Result<()> {
        if len != self.rank() {
            return Err(Error::Structural(format!(
                "expected {} exponents for {self}, got {len}",
                self.rank()
            )));
        }
        Ok(())
    }

    pub fn compose(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check_member(g)?;
        self.check_member(h)?;
        Ok(GroupElement {
            exponents: g
                .exponents
                .iter()
                .zip(&h.exponents)
                .zip(&self.moduli)
                .map(|((a, b), n)| (a + b) % n)
                .collect(),
        })
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check_member(g)?;
        Ok(GroupElement {
            exponents: g.exponents.iter().zip(&self.moduli).map(|(a, n)| (n - a) % n).collect(),
        })
    }

    /// All elements in lexicographic exponent order, identity first.
    pub fn enumerate(&self) -> Vec<GroupElement> {
        (0..self.order()).map(|i| self.element_at(i)).collect()
    }

    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        self.check_member(g)?;
        Ok(g.exponents.iter().zip(&self.moduli).fold(0usize, |acc, (e, n)| acc * *n as usize + *e as usize))
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        debug_assert!(index < self.order());
        let mut exponents = vec![0; self.rank()];
        for (slot, n) in exponents.iter_mut().zip(&self.moduli).rev() {
            *slot = (index % *n as usize) as u64;
            index /= *n as usize;
        }
        GroupElement { exponents }
    }

    /// Index-level multiplication table.
    pub fn cayley(&self) -> Cayley {
        let elems = self.enumerate();
        let order = elems.len();
        let mut mul = Vec::with_capacity(order * order);
        for g in &elems {
            for h in &elems {
                let gh = self.compose(g, h).expect("enumerated elements are members");
                mul.push(self.index_of(&gh).expect("composed element is a member"));
            }
        }
        Cayley { order, mul }
    }

    /// The presentation with every trivial factor removed (the rank may drop to 0).
    pub fn nontrivial_moduli(&self) -> Vec<u64> {
        self.moduli.iter().copied().filter(|&n| n > 1).collect()
    }
}

/// Multiplication table over element indices.
#[derive(Clone, Debug)]
pub struct Cayley {
    order: usize,
    mul: Vec<usize>,
}

impl Cayley {
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.moduli.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "Z_{n}")?;
        }
        Ok(())
    }
}

/// Parses comma-separated moduli, e.g. `2,4,3`.
impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let moduli = s
            .split(',')
            .map(|part| {
                let part = part.trim();
                part.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("invalid modulus `{part}` in group literal `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(moduli)
    }
}

impl TryFrom<Vec<u64>> for GroupSpec {
    type Error = Error;

    fn try_from(moduli: Vec<u64>) -> Result<Self> {
        Self::new(moduli)
    }
}

impl From<GroupSpec> for Vec<u64> {
    fn from(g: GroupSpec) -> Self {
        g.moduli
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(m: &[u64]) -> GroupSpec {
        GroupSpec::new(m.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let z23 = g(&[2, 3]);
        let x = z23.element(&[1, 2]).unwrap();
        assert_eq!(z23.compose(&x, &x).unwrap().exponents(), &[0, 1]);

        let z6 = g(&[6]);
        let five = z6.element(&[5]).unwrap();
        assert_eq!(z6.compose(&five, &five).unwrap().exponents(), &[4]);

        let z4 = g(&[4]);
        for x in z4.enumerate() {
            assert_eq!(z4.compose(&x, &z4.identity()).unwrap(), x);
        }
    }

    #[test]
    fn compose_rejects_foreign_elements() {
        let z23 = g(&[2, 3]);
        let z4 = g(&[4]);
        let x = z4.element(&[3]).unwrap();
        assert!(matches!(z23.compose(&x, &x), Err(Error::Structural(_))));
        let bad = GroupElement { exponents: vec![2, 0] };
        assert!(z23.compose(&bad, &z23.identity()).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let z2 = g(&[2]);
        let e: Vec<_> = z2.enumerate().iter().map(|x| x.exponents().to_vec()).collect();
        assert_eq!(e, vec![vec![0], vec![1]]);

        let v4 = g(&[2, 2]);
        let e: Vec<_> = v4.enumerate().iter().map(|x| x.exponents().to_vec()).collect();
        assert_eq!(e, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);

        assert_eq!(g(&[6, 4]).enumerate().len(), 24);
    }

    #[test]
    fn enumerate_is_a_bijection() {
        for m in [vec![1], vec![3, 1, 2], vec![2, 2, 3], vec![4, 6]] {
            let grp = g(&m);
            let elems = grp.enumerate();
            assert_eq!(elems.len(), grp.order());
            for (i, x) in elems.iter().enumerate() {
                assert!(grp.contains(x));
                assert_eq!(grp.index_of(x).unwrap(), i);
            }
            let mut sorted = elems.clone();
            sorted.sort();
            assert_eq!(sorted, elems, "lexicographic order");
        }
    }

    #[test]
    fn group_axioms_exhaustive() {
        for m in [vec![2, 2, 2], vec![4, 4], vec![2, 3], vec![8, 2], vec![1, 5]] {
            let grp = g(&m);
            let c = grp.cayley();
            let n = grp.order();
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(c.mul(a, b), c.mul(b, a));
                    for d in 0..n {
                        assert_eq!(c.mul(c.mul(a, b), d), c.mul(a, c.mul(b, d)));
                    }
                }
            }
        }
    }

    #[test]
    fn parse_literals() {
        let grp: GroupSpec = "2,4,3".parse().unwrap();
        assert_eq!(grp.moduli(), &[2, 4, 3]);
        assert_eq!(grp.to_string(), "Z_2 x Z_4 x Z_3");
        assert!("2,,3".parse::<GroupSpec>().is_err());
        assert!("0".parse::<GroupSpec>().is_err());
        assert!("".parse::<GroupSpec>().is_err());
        assert_eq!(g(&[4, 6]).exponent(), 12);
    }
}
