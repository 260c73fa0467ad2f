use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::smith::invariant_factors;

/// A finite abelian group as its invariant factors `d_1 | d_2 | ... | d_r`, all `> 1`.
///
/// Two shapes compare equal exactly when the groups are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroupShape {
    cyclic_orders: Vec<u64>,
}

impl AbelianGroupShape {
    pub fn trivial() -> Self {
        Self { cyclic_orders: Vec::new() }
    }

    /// Normalizes any multiset of cyclic orders (1s allowed) to invariant factors.
    pub fn from_cyclic_orders<I: IntoIterator<Item = u64>>(orders: I) -> Self {
        let orders: Vec<u64> = orders.into_iter().filter(|&d| d != 1).collect();
        assert!(orders.iter().all(|&d| d > 0), "cyclic orders must be finite and positive");
        if orders.len() <= 1 {
            return Self { cyclic_orders: orders };
        }
        let n = orders.len();
        let mut diag = IntMatrix::zeros(n, n);
        for (i, d) in orders.iter().enumerate() {
            diag[(i, i)] = i64::try_from(*d).expect("cyclic order fits in i64");
        }
        let cyclic_orders = invariant_factors(&diag)
            .iter()
            .map(|d| d.to_u64().expect("invariant factor of u64 orders"))
            .filter(|&d| d != 1)
            .collect();
        Self { cyclic_orders }
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.cyclic_orders
    }

    pub fn is_trivial(&self) -> bool {
        self.cyclic_orders.is_empty()
    }

    pub fn order(&self) -> BigUint {
        self.cyclic_orders.iter().fold(BigUint::one(), |acc, &d| acc * d)
    }
}

impl fmt::Display for AbelianGroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cyclic_orders.is_empty() {
            return write!(f, "0");
        }
        for (i, d) in self.cyclic_orders.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "Z_{d}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let a = AbelianGroupShape::from_cyclic_orders([2, 3]);
        assert_eq!(a.cyclic_orders(), &[6]);
        let b = AbelianGroupShape::from_cyclic_orders([6, 1, 1]);
        assert_eq!(a, b);
        let c = AbelianGroupShape::from_cyclic_orders([4, 2, 6]);
        assert_eq!(c.cyclic_orders(), &[2, 2, 12]);
        assert_eq!(c.order(), BigUint::from(48u32));
        assert!(AbelianGroupShape::from_cyclic_orders([1, 1]).is_trivial());
        assert_ne!(AbelianGroupShape::from_cyclic_orders([4]), AbelianGroupShape::from_cyclic_orders([2, 2]));
        assert_eq!(c.to_string(), "Z_2 + Z_2 + Z_12");
        assert_eq!(AbelianGroupShape::trivial().to_string(), "0");
    }

    #[test]
    fn json_shape() {
        let s = AbelianGroupShape::from_cyclic_orders([2, 2]);
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"cyclic_orders":[2,2]}"#);
    }
}
