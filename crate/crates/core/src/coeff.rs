//! Coefficient groups `A`.
//!
//! A finite cyclic `μ_N` is written multiplicatively but stored additively: the element
//! `e^{2πi·k/N}` is the exponent `k mod N`. `C*` and `R*` exist only as descriptors that
//! answer `|A/nA|` and `|Ann_A(n)|`, which is all the closed-form cohomology needs.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoeffDescriptor {
    #[serde(rename = "muN")]
    MuN(u64),
    #[serde(rename = "cstar")]
    CStar,
    #[serde(rename = "rstar")]
    RStar,
}

impl CoeffDescriptor {
    pub fn mu(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Structural("μ_N needs N >= 1".into()));
        }
        Ok(Self::MuN(n))
    }

    /// `|A/nA|`.
    pub fn quot_order(&self, n: u64) -> u64 {
        assert!(n >= 1, "quot_order needs n >= 1");
        match *self {
            Self::MuN(m) => n.gcd(&m),
            Self::CStar => 1,
            Self::RStar => n.gcd(&2),
        }
    }

    /// `|Ann_A(n)| = |{x in A : x^n = 1}|`.
    pub fn ann_order(&self, n: u64) -> u64 {
        assert!(n >= 1, "ann_order needs n >= 1");
        match *self {
            Self::MuN(m) => n.gcd(&m),
            Self::CStar => n,
            Self::RStar => n.gcd(&2),
        }
    }

    /// `|Ann_A(n) ∩ Ann_A(m)|`. All annihilators live in one cyclic torsion group, so
    /// the intersection is the subgroup of order `gcd`.
    pub fn ann_meet_order(&self, n: u64, m: u64) -> u64 {
        self.ann_order(n).gcd(&self.ann_order(m))
    }

    /// `|R_n|`, the number of n-th roots of unity in a finite `A`.
    pub fn roots_of_unity_count(&self, n: u64) -> Result<u64> {
        match *self {
            Self::MuN(m) => Ok(n.gcd(&m)),
            other => Err(Error::Unsupported(format!(
                "roots-of-unity counts need a finite coefficient group, got {other}"
            ))),
        }
    }

    pub fn modulus(&self) -> Result<u64> {
        match *self {
            Self::MuN(m) => Ok(m),
            other => Err(Error::Unsupported(format!("{other} carries no elements; use muN:<N>"))),
        }
    }
}

impl fmt::Display for CoeffDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MuN(n) => write!(f, "muN:{n}"),
            Self::CStar => write!(f, "cstar"),
            Self::RStar => write!(f, "rstar"),
        }
    }
}

/// Parses `muN:8`, `cstar` or `rstar`.
impl FromStr for CoeffDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "cstar" | "c*" => return Ok(Self::CStar),
            "rstar" | "r*" => return Ok(Self::RStar),
            _ => {}
        }
        let rest = t
            .strip_prefix("muN:")
            .or_else(|| t.strip_prefix("mun:"))
            .or_else(|| t.strip_prefix("mu:"))
            .ok_or_else(|| Error::Parse(format!("unknown coefficient literal `{s}` (expected muN:<N>, cstar, rstar)")))?;
        let n = rest
            .trim()
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("invalid order in coefficient literal `{s}`")))?;
        Self::mu(n).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// An element of `μ_N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffElement {
    modulus: u64,
    exponent: u64,
}

impl CoeffElement {
    pub fn new(modulus: u64, exponent: u64) -> Self {
        assert!(modulus >= 1, "μ_N needs N >= 1");
        Self { modulus, exponent: exponent % modulus }
    }

    pub fn unit(modulus: u64) -> Self {
        Self::new(modulus, 0)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn descriptor(&self) -> CoeffDescriptor {
        CoeffDescriptor::MuN(self.modulus)
    }

    pub fn is_unit(&self) -> bool {
        self.exponent == 0
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::Structural(format!(
                "mixed coefficient groups μ_{} and μ_{}",
                self.modulus, other.modulus
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::new(self.modulus, self.exponent + other.exponent))
    }

    pub fn inv(&self) -> Self {
        Self::new(self.modulus, self.modulus - self.exponent)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv())
    }

    /// `x^e` for any integer `e`, negative powers included.
    pub fn pow(&self, e: i64) -> Self {
        let m = self.modulus as i128;
        let k = (self.exponent as i128 * e as i128).rem_euclid(m);
        Self::new(self.modulus, k as u64)
    }

    /// Multiplicative order of the element.
    pub fn order(&self) -> u64 {
        self.modulus / self.exponent.gcd(&self.modulus)
    }
}

impl fmt::Display for CoeffElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "1")
        } else {
            write!(f, "ζ{}^{}", self.modulus, self.exponent)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn mu_elems(n: u64) -> Vec<CoeffElement> {
        (0..n).map(|k| CoeffElement::new(n, k)).collect()
    }

    /// |{x in μ_N : x^n = 1}| by enumeration.
    fn brute_ann(big_n: u64, n: u64) -> u64 {
        mu_elems(big_n).iter().filter(|x| x.pow(n as i64).is_unit()).count() as u64
    }

    /// |μ_N / (μ_N)^n| by enumeration of the subgroup of n-th powers.
    fn brute_quot(big_n: u64, n: u64) -> u64 {
        let powers: BTreeSet<_> = mu_elems(big_n).iter().map(|x| x.pow(n as i64)).collect();
        big_n / powers.len() as u64
    }

    #[test]
    fn quot_order_examples() {
        assert_eq!(CoeffDescriptor::CStar.quot_order(5), 1);
        assert_eq!(CoeffDescriptor::RStar.quot_order(3), 1);
        assert_eq!(CoeffDescriptor::RStar.quot_order(4), 2);
        assert_eq!(brute_quot(4, 6), 2);
        assert_eq!(CoeffDescriptor::MuN(4).quot_order(6), 2);
    }

    #[test]
    fn ann_order_examples() {
        assert_eq!(CoeffDescriptor::CStar.ann_order(6), 6);
        assert_eq!(CoeffDescriptor::RStar.ann_order(4), 2);
        assert_eq!(CoeffDescriptor::RStar.ann_order(5), 1);
        assert_eq!(brute_ann(6, 4), 2);
        assert_eq!(CoeffDescriptor::MuN(6).ann_order(4), 2);
    }

    #[test]
    fn roots_of_unity_examples() {
        assert_eq!(brute_ann(2, 4), 2);
        assert_eq!(CoeffDescriptor::MuN(2).roots_of_unity_count(4).unwrap(), 2);
        assert_eq!(brute_ann(12, 4), 4);
        assert_eq!(CoeffDescriptor::MuN(12).roots_of_unity_count(4).unwrap(), 4);
        for n in 1..20 {
            assert_eq!(CoeffDescriptor::MuN(n).roots_of_unity_count(1).unwrap(), 1);
        }
        assert!(matches!(CoeffDescriptor::CStar.roots_of_unity_count(3), Err(Error::Unsupported(_))));
        assert!(CoeffDescriptor::RStar.roots_of_unity_count(3).is_err());
    }

    #[test]
    fn finite_descriptor_matches_enumeration() {
        for big_n in 1..=64u64 {
            let a = CoeffDescriptor::MuN(big_n);
            for n in 1..=64u64 {
                let ann = brute_ann(big_n, n);
                assert_eq!(a.ann_order(n), ann);
                assert_eq!(a.roots_of_unity_count(n).unwrap(), ann);
                assert_eq!(a.quot_order(n), brute_quot(big_n, n));
                let image = big_n / brute_quot(big_n, n);
                assert_eq!(a.quot_order(n) * image, big_n);
                assert_eq!(big_n % a.quot_order(n), 0);
            }
        }
    }

    #[test]
    fn annihilator_meet_is_gcd_of_orders() {
        for big_n in [1u64, 2, 6, 12, 24, 36, 60, 64] {
            let a = CoeffDescriptor::MuN(big_n);
            for n in 1..=24u64 {
                for m in 1..=24u64 {
                    let meet = mu_elems(big_n)
                        .iter()
                        .filter(|x| x.pow(n as i64).is_unit() && x.pow(m as i64).is_unit())
                        .count() as u64;
                    assert_eq!(a.ann_meet_order(n, m), meet);
                }
            }
        }
    }

    #[test]
    fn element_arithmetic() {
        assert!(CoeffElement::new(4, 1).pow(4).is_unit());
        let m = CoeffElement::new(2, 1).mul(&CoeffElement::new(2, 1)).unwrap();
        assert_eq!(m.exponent(), 0);
        assert_eq!(CoeffElement::new(6, 2).inv().exponent(), 4);
        assert_eq!(CoeffElement::new(6, 2).pow(-1).exponent(), 4);
        assert!(matches!(
            CoeffElement::new(6, 2).mul(&CoeffElement::new(4, 1)),
            Err(Error::Structural(_))
        ));
        for n in 1..=64 {
            for x in mu_elems(n) {
                assert!(x.mul(&x.inv()).unwrap().is_unit());
            }
        }
    }

    #[test]
    fn parse_literals() {
        assert_eq!("muN:8".parse::<CoeffDescriptor>().unwrap(), CoeffDescriptor::MuN(8));
        assert_eq!("cstar".parse::<CoeffDescriptor>().unwrap(), CoeffDescriptor::CStar);
        assert_eq!("rstar".parse::<CoeffDescriptor>().unwrap(), CoeffDescriptor::RStar);
        assert!("muN:0".parse::<CoeffDescriptor>().is_err());
        assert!("zz".parse::<CoeffDescriptor>().is_err());
        assert_eq!(CoeffDescriptor::MuN(8).to_string(), "muN:8");
    }
}
