//! Associative twisted algebras: counting over `C` and `R`, explicit bicharacter
//! representatives, the `q` invariant and the coboundary isomorphism test.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::algebra::{BasisRescaling, StructureConstants};
use crate::coeff::CoeffElement;
use crate::cohomology::{boundary_matrix, solve_mod};
use crate::error::{guard, Error, Result};
use crate::group::GroupSpec;

const REPRESENTATIVE_CELL_LIMIT: u128 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Complex,
    Real,
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "C" | "c" | "complex" => Ok(Self::Complex),
            "R" | "r" | "real" => Ok(Self::Real),
            other => Err(Error::Parse(format!("unknown field `{other}` (expected C or R)"))),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Complex => "C",
            Self::Real => "R",
        })
    }
}

fn pair_gcds(group: &GroupSpec) -> Vec<(usize, usize, u64)> {
    let m = group.moduli();
    let mut out = Vec::new();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            out.push((i, j, m[i].gcd(&m[j])));
        }
    }
    out
}

/// Number of graded-isomorphism classes of associative twisted algebras over the field.
///
/// Over `C` this is `∏_{i<j} gcd(n_i, n_j)`; over `R` it is `2^{s(s+1)/2}` with `s` the
/// number of even moduli.
pub fn count_assoc_classes(group: &GroupSpec, field: Field) -> BigUint {
    match field {
        Field::Complex => pair_gcds(group).iter().map(|&(_, _, d)| BigUint::from(d)).product(),
        Field::Real => {
            let s = group.moduli().iter().filter(|n| n.is_even()).count() as u32;
            BigUint::one() << (s * (s + 1) / 2)
        }
    }
}

/// One bicharacter `C(x,y) = ∏_{i<j} ζ_{d_ij}^{c_ij x_i y_j}` per tuple
/// `c ∈ ∏ Z_{d_ij}`, `d_ij = gcd(n_i, n_j)`, in lexicographic order of `c`
/// (pairs `(i,j)` ordered lexicographically, first pair slowest).
pub fn enumerate_assoc_representatives(group: &GroupSpec, n: u64) -> Result<Vec<StructureConstants>> {
    let pairs = pair_gcds(group);
    let needed = pairs.iter().fold(1u64, |acc, &(_, _, d)| acc.lcm(&d));
    if n == 0 || n % needed != 0 {
        return Err(Error::Unsupported(format!(
            "representatives over {group} need μ_N with N divisible by {needed}; got N = {n}"
        )));
    }
    let count: u128 = pairs.iter().map(|&(_, _, d)| d as u128).product();
    let cells = (group.order() as u128).pow(2);
    guard("associative representatives (table cells)", count.saturating_mul(cells), REPRESENTATIVE_CELL_LIMIT)?;
    let elems = group.enumerate();
    let mut out = Vec::with_capacity(count as usize);
    let mut c = vec![0u64; pairs.len()];
    loop {
        let table = StructureConstants::from_fn(group.clone(), n, |a, b| {
            let (x, y) = (elems[a].exponents(), elems[b].exponents());
            pairs
                .iter()
                .zip(&c)
                .map(|(&(i, j, d), &cij)| ((cij * x[i] * y[j]) % d * (n / d)) as i64)
                .sum()
        })?;
        out.push(table);
        // odometer, last pair fastest
        let mut pos = pairs.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            c[pos] += 1;
            if c[pos] < pairs[pos].2 {
                break;
            }
            c[pos] = 0;
        }
    }
}

/// `q(a_i, a_j)` on the fixed generators.
pub fn q_invariant(c: &StructureConstants) -> Vec<Vec<CoeffElement>> {
    let g = c.group();
    let gens: Vec<_> = (0..g.rank()).map(|i| g.index_of(&g.generator(i)).expect("generator is a member")).collect();
    gens.iter()
        .map(|&a| gens.iter().map(|&b| CoeffElement::new(c.modulus(), c.q_at(a, b))).collect())
        .collect()
}

pub(crate) fn check_same_space(c1: &StructureConstants, c2: &StructureConstants) -> Result<()> {
    if c1.group() != c2.group() || c1.modulus() != c2.modulus() {
        return Err(Error::Structural(format!(
            "tables live over different data: {} / μ_{} and {} / μ_{}",
            c1.group(),
            c1.modulus(),
            c2.group(),
            c2.modulus()
        )));
    }
    Ok(())
}

/// Decides whether two associative tables are graded-isomorphic, i.e. whether
/// `C1 C2^{-1} = ∂λ` for some `λ : G -> μ_M`, `M = N · exp(G)`. On success returns `λ`
/// with `rescale(C2, λ) = C1`.
pub fn iso_test_associative(c1: &StructureConstants, c2: &StructureConstants) -> Result<Option<BasisRescaling>> {
    check_same_space(c1, c2)?;
    for (name, c) in [("first", c1), ("second", c2)] {
        if let Some((a, b, x)) = c.associativity_witness() {
            let g = c.group();
            return Err(Error::Contract(format!(
                "{name} table is not associative: r({}, {}, {}) ≠ 1",
                g.element_at(a),
                g.element_at(b),
                g.element_at(x)
            )));
        }
    }
    let group = c1.group();
    let e = group.exponent();
    let n = c1.modulus();
    let m = n * e;
    let d1 = boundary_matrix(group, 1)?;
    let rhs: Vec<i64> = c1
        .exponents()
        .iter()
        .zip(c2.exponents())
        .map(|(&x, &y)| (((x + n - y) % n) * e) as i64)
        .collect();
    let Some(values) = solve_mod(&d1, &rhs, m) else {
        return Ok(None);
    };
    let lambda = BasisRescaling::new(group.clone(), m, values)?;
    debug_assert_eq!(&c2.rescale(&lambda)?, c1);
    Ok(Some(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{h2_bruteforce, h2_closed_form};
    use crate::coeff::CoeffDescriptor;
    use rand::{Rng, SeedableRng};

    fn grp(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(count_assoc_classes(&grp("6,4"), Field::Complex), BigUint::from(2u32));
        assert_eq!(count_assoc_classes(&grp("2,2,2"), Field::Complex), BigUint::from(8u32));
        assert_eq!(count_assoc_classes(&grp("3,5"), Field::Complex), BigUint::from(1u32));
        assert_eq!(count_assoc_classes(&grp("2,2"), Field::Real), BigUint::from(8u32));
        assert_eq!(count_assoc_classes(&grp("3"), Field::Real), BigUint::from(1u32));
    }

    #[test]
    fn counts_match_cohomology() {
        for s in ["2", "4", "2,2", "2,3", "2,4", "3,3", "6", "2,2,2", "2,2,3", "4,4", "2,8"] {
            let g = grp(s);
            assert_eq!(count_assoc_classes(&g, Field::Complex), h2_closed_form(&g, &CoeffDescriptor::CStar).order(), "{s}");
            assert_eq!(count_assoc_classes(&g, Field::Real), h2_closed_form(&g, &CoeffDescriptor::RStar).order(), "{s}");
            assert_eq!(count_assoc_classes(&g, Field::Real), h2_bruteforce(&g, 2).unwrap().order(), "{s}");
        }
    }

    #[test]
    fn representatives_are_complete_and_distinct() {
        for (s, n) in [("2,2", 2u64), ("2,2,2", 2), ("3,5", 1), ("2,4", 2), ("2,4", 8), ("3,6", 3)] {
            let g = grp(s);
            let reps = enumerate_assoc_representatives(&g, n).unwrap();
            assert_eq!(BigUint::from(reps.len()), count_assoc_classes(&g, Field::Complex), "{s}");
            for r in &reps {
                assert!(r.is_associative());
                assert!(r.is_symmetric_12());
            }
            for i in 0..reps.len() {
                for j in 0..reps.len() {
                    let iso = iso_test_associative(&reps[i], &reps[j]).unwrap();
                    assert_eq!(iso.is_some(), i == j, "{s}: {i} vs {j}");
                    if i != j {
                        assert_ne!(q_invariant(&reps[i]), q_invariant(&reps[j]));
                    }
                }
            }
        }
    }

    #[test]
    fn representatives_need_enough_roots() {
        let err = enumerate_assoc_representatives(&grp("4,6"), 3).unwrap_err();
        assert!(matches!(&err, Error::Unsupported(m) if m.contains("divisible by 2")));
    }

    #[test]
    fn quaternion_representative() {
        let g = grp("2,2");
        let reps = enumerate_assoc_representatives(&g, 2).unwrap();
        assert!(reps[0].exponents().iter().all(|&x| x == 0));
        let q = q_invariant(&reps[1]);
        assert_eq!(q[0][1], CoeffElement::new(2, 1));
        assert!(q_invariant(&reps[0]).iter().flatten().all(|x| x.is_unit()));
        assert!(!reps[1].is_commutative());
    }

    #[test]
    fn planted_coboundaries_are_found() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for (s, n) in [("2,2", 2u64), ("2,4", 8), ("3,3", 3), ("2,2,2", 4)] {
            let g = grp(s);
            for rep in enumerate_assoc_representatives(&g, n).unwrap() {
                for _ in 0..5 {
                    let m = n * g.exponent();
                    let mut values: Vec<u64> = (0..g.order()).map(|_| rng.gen_range(0..m)).collect();
                    values[0] = 0;
                    // keep only rescalings that stay inside μ_N
                    let lambda = BasisRescaling::new(g.clone(), m, values).unwrap();
                    let Ok(moved) = rep.rescale(&lambda) else { continue };
                    let witness = iso_test_associative(&moved, &rep).unwrap().expect("planted coboundary");
                    assert_eq!(rep.rescale(&witness).unwrap(), moved);
                    assert_eq!(q_invariant(&moved), q_invariant(&rep));
                }
            }
        }
    }

    #[test]
    fn q_invariant_is_rescaling_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let g = grp("2,4");
        let reps = enumerate_assoc_representatives(&g, 8).unwrap();
        let c = &reps[1];
        for _ in 0..100 {
            let mut values: Vec<u64> = (0..g.order()).map(|_| rng.gen_range(0..8)).collect();
            values[0] = 0;
            let lambda = BasisRescaling::new(g.clone(), 8, values).unwrap();
            assert_eq!(q_invariant(&c.rescale(&lambda).unwrap()), q_invariant(c));
        }
    }

    #[test]
    fn non_associative_input_is_a_contract_error() {
        let g = grp("3");
        let mut t = vec![0u64; 9];
        t[4] = 1;
        let bad = StructureConstants::new(g.clone(), 3, t).unwrap();
        let good = StructureConstants::trivial(g, 3).unwrap();
        assert!(matches!(iso_test_associative(&bad, &good), Err(Error::Contract(_))));
    }

    #[test]
    fn field_literals() {
        assert_eq!("C".parse::<Field>().unwrap(), Field::Complex);
        assert_eq!("R".parse::<Field>().unwrap(), Field::Real);
        assert!("Q".parse::<Field>().is_err());
    }
}
