//! Smith normal form over the integers, and the two computations built on it:
//! solving linear congruences and the homology of a two-step complex modulo `N`.
//!
//! Pivoting picks the entry of least absolute value in the remaining block; all
//! arithmetic is on `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{BigMatrix, IntMatrix, Matrix};
use super::shape::AbelianGroupShape;

/// Which unimodular transforms to record alongside the diagonal.
#[derive(Clone, Copy, Debug, Default)]
pub struct Transforms {
    pub left: bool,
    pub right: bool,
    pub right_inv: bool,
}

impl Transforms {
    pub const NONE: Self = Self { left: false, right: false, right_inv: false };
    pub const ALL: Self = Self { left: true, right: true, right_inv: true };
}

/// `U · M · V = D`, with `D` diagonal, `d_1 | d_2 | ... | d_r` positive and all further
/// diagonal entries zero.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero invariant factors; `diagonal.len()` is the rank.
    pub diagonal: Vec<BigInt>,
    pub left: Option<BigMatrix>,
    pub right: Option<BigMatrix>,
    pub right_inv: Option<BigMatrix>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// The full `rows x cols` diagonal matrix `D`.
    pub fn diagonal_matrix(&self) -> BigMatrix {
        let mut d = Matrix::zeros(self.rows, self.cols);
        for (i, x) in self.diagonal.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }
}

#[derive(Debug)]
struct Overflow;

/// The arithmetic the elimination needs. `i128` reports overflow so the caller can
/// restart on `BigInt`; `BigInt` never fails.
trait Entry: Clone {
    fn nil() -> Self;
    fn unit() -> Self;
    fn vanishes(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn abs_is_one(&self) -> bool;
    fn negative(&self) -> bool;
    /// Truncated quotient.
    fn quot(&self, d: &Self) -> Result<Self, Overflow>;
    /// Whether `self` divides `x`.
    fn divides(&self, x: &Self) -> bool;
    /// `self -= q * y`
    fn sub_mul(&mut self, q: &Self, y: &Self) -> Result<(), Overflow>;
    fn negate(&mut self) -> Result<(), Overflow>;
    fn into_big(self) -> BigInt;
}

impl Entry for i128 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn abs_is_one(&self) -> bool {
        self.unsigned_abs() == 1
    }
    fn negative(&self) -> bool {
        *self < 0
    }
    fn quot(&self, d: &Self) -> Result<Self, Overflow> {
        self.checked_div(*d).ok_or(Overflow)
    }
    fn divides(&self, x: &Self) -> bool {
        x.checked_rem(*self).map_or(false, |r| r == 0)
    }
    fn sub_mul(&mut self, q: &Self, y: &Self) -> Result<(), Overflow> {
        *self = q.checked_mul(*y).and_then(|p| self.checked_sub(p)).ok_or(Overflow)?;
        Ok(())
    }
    fn negate(&mut self) -> Result<(), Overflow> {
        *self = self.checked_neg().ok_or(Overflow)?;
        Ok(())
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Entry for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn abs_is_one(&self) -> bool {
        self.magnitude().is_one()
    }
    fn negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn quot(&self, d: &Self) -> Result<Self, Overflow> {
        Ok(self / d)
    }
    fn divides(&self, x: &Self) -> bool {
        x.is_multiple_of(self)
    }
    fn sub_mul(&mut self, q: &Self, y: &Self) -> Result<(), Overflow> {
        *self -= q * y;
        Ok(())
    }
    fn negate(&mut self) -> Result<(), Overflow> {
        *self = -std::mem::take(self);
        Ok(())
    }
    fn into_big(self) -> BigInt {
        self
    }
}

struct Work<T> {
    a: Vec<Vec<T>>,
    rows: usize,
    cols: usize,
    u: Option<Vec<Vec<T>>>,
    v: Option<Vec<Vec<T>>>,
    vinv: Option<Vec<Vec<T>>>,
}

fn identity_rows<T: Entry>(n: usize) -> Vec<Vec<T>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { T::unit() } else { T::nil() }).collect()).collect()
}

/// `dst -= q * src` on two rows of the same table, from column `from` on.
fn row_axpy<T: Entry>(rows: &mut [Vec<T>], dst: usize, src: usize, q: &T, from: usize) -> Result<(), Overflow> {
    let (d, s) = if dst < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in d[from..].iter_mut().zip(&s[from..]) {
        if !y.vanishes() {
            x.sub_mul(q, y)?;
        }
    }
    Ok(())
}

impl<T: Entry> Work<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
        if let Some(vinv) = &mut self.vinv {
            vinv.swap(i, j);
        }
    }

    /// row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &T) -> Result<(), Overflow> {
        // both rows vanish left of the smaller index
        row_axpy(&mut self.a, i, t, q, i.min(t))?;
        if let Some(u) = &mut self.u {
            row_axpy(u, i, t, q, 0)?;
        }
        Ok(())
    }

    /// col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &T) -> Result<(), Overflow> {
        for row in self.a.iter_mut() {
            if !row[t].vanishes() {
                let y = row[t].clone();
                row[j].sub_mul(q, &y)?;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                if !row[t].vanishes() {
                    let y = row[t].clone();
                    row[j].sub_mul(q, &y)?;
                }
            }
        }
        if let Some(vinv) = &mut self.vinv {
            // inverse of the column operation: row_t += q * row_j
            let mut neg = q.clone();
            neg.negate()?;
            row_axpy(vinv, t, j, &neg, 0)?;
        }
        Ok(())
    }

    fn min_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.vanishes() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if !x.abs_lt(&self.a[bi][bj]) => {}
                    _ => {
                        best = Some((i, j));
                        if x.abs_is_one() {
                            return best;
                        }
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) -> Result<Vec<T>, Overflow> {
        let mut diagonal = Vec::new();
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pi, pj)) = self.min_in_block(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.rows {
                    if self.a[i][t].vanishes() {
                        continue;
                    }
                    let q = self.a[i][t].quot(&self.a[t][t])?;
                    if !q.vanishes() {
                        self.row_sub(i, t, &q)?;
                    }
                    if !self.a[i][t].vanishes() {
                        clean = false;
                    }
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].vanishes() {
                        continue;
                    }
                    let q = self.a[t][j].quot(&self.a[t][t])?;
                    if !q.vanishes() {
                        self.col_sub(j, t, &q)?;
                    }
                    if !self.a[t][j].vanishes() {
                        clean = false;
                    }
                }
                if !clean {
                    // a remainder smaller than the pivot survived: make it the pivot
                    let mut best = (t, t);
                    for i in t + 1..self.rows {
                        if !self.a[i][t].vanishes() && self.a[i][t].abs_lt(&self.a[best.0][best.1]) {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.cols {
                        if !self.a[t][j].vanishes() && self.a[t][j].abs_lt(&self.a[best.0][best.1]) {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                let pivot = &self.a[t][t];
                if pivot.abs_is_one() {
                    break;
                }
                let offender = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !pivot.divides(&self.a[i][j])));
                match offender {
                    Some(i) => {
                        // row_t += row_i, then the row sweep leaves a smaller remainder
                        let mut minus_one = T::unit();
                        minus_one.negate()?;
                        self.row_sub(t, i, &minus_one)?;
                    }
                    None => break,
                }
            }
            if self.a[t][t].negative() {
                for x in &mut self.a[t][t..] {
                    x.negate()?;
                }
                if let Some(u) = &mut self.u {
                    for x in u[t].iter_mut() {
                        x.negate()?;
                    }
                }
            }
            diagonal.push(self.a[t][t].clone());
            t += 1;
        }
        Ok(diagonal)
    }
}

fn to_matrix<T: Entry>(rows: Vec<Vec<T>>, n: usize) -> BigMatrix {
    Matrix::from_vec(n, n, rows.into_iter().flatten().map(Entry::into_big).collect())
}

fn eliminate<T: Entry>(a: Vec<Vec<T>>, rows: usize, cols: usize, want: Transforms) -> Result<SmithForm, Overflow> {
    let mut w = Work {
        a,
        rows,
        cols,
        u: want.left.then(|| identity_rows(rows)),
        v: want.right.then(|| identity_rows(cols)),
        vinv: want.right_inv.then(|| identity_rows(cols)),
    };
    let diagonal = w.run()?;
    Ok(SmithForm {
        rows,
        cols,
        diagonal: diagonal.into_iter().map(Entry::into_big).collect(),
        left: w.u.map(|u| to_matrix(u, rows)),
        right: w.v.map(|v| to_matrix(v, cols)),
        right_inv: w.vinv.map(|v| to_matrix(v, cols)),
    })
}

pub fn smith_normal_form(m: &IntMatrix, want: Transforms) -> SmithForm {
    let rows = m.rows();
    let cols = m.cols();
    let small: Vec<Vec<i128>> = (0..rows).map(|i| m.row(i).iter().map(|&x| x as i128).collect()).collect();
    match eliminate(small, rows, cols, want) {
        Ok(f) => f,
        Err(Overflow) => smith_normal_form_big(&m.to_big(), want),
    }
}

/// Runs on machine integers while they suffice and restarts on `BigInt` otherwise.
pub fn smith_normal_form_big(m: &BigMatrix, want: Transforms) -> SmithForm {
    let rows = m.rows();
    let cols = m.cols();
    let small: Option<Vec<Vec<i128>>> =
        (0..rows).map(|i| m.row(i).iter().map(|x| x.to_i128()).collect()).collect();
    if let Some(small) = small {
        if let Ok(f) = eliminate(small, rows, cols, want) {
            return f;
        }
    }
    let Ok(f) = eliminate(m.clone().into_rows(), rows, cols, want) else {
        unreachable!("BigInt arithmetic does not overflow")
    };
    f
}

/// Nonzero invariant factors of `m`.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    smith_normal_form(m, Transforms::NONE).diagonal
}

fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Solves `A x ≡ b (mod m)`; returns `x` with entries in `[0, m)` when a solution exists.
pub fn solve_mod(a: &IntMatrix, b: &[i64], m: u64) -> Option<Vec<u64>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length must match the row count");
    let modulus = BigInt::from(m);
    let snf = smith_normal_form(a, Transforms { left: true, right: true, right_inv: false });
    let u = snf.left.as_ref().expect("left transform requested");
    let v = snf.right.as_ref().expect("right transform requested");
    // c = U b
    let c: Vec<BigInt> = (0..a.rows())
        .map(|i| {
            u.row(i)
                .iter()
                .zip(b)
                .filter(|(x, y)| !x.is_zero() && **y != 0)
                .map(|(x, y)| x * BigInt::from(*y))
                .sum::<BigInt>()
                .mod_floor(&modulus)
        })
        .collect();
    let mut z = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < snf.rank() {
            let d = snf.diagonal[i].mod_floor(&modulus);
            let g = d.gcd(&modulus);
            if !ci.is_multiple_of(&g) {
                return None;
            }
            let reduced = &modulus / &g;
            if reduced.is_one() {
                continue;
            }
            z[i] = ((ci / &g) * modinv(&(&d / &g), &reduced)).mod_floor(&reduced);
        } else if !ci.is_zero() {
            return None;
        }
    }
    let x = (0..a.cols())
        .map(|i| {
            v.row(i)
                .iter()
                .zip(&z)
                .map(|(p, q)| p * q)
                .sum::<BigInt>()
                .mod_floor(&modulus)
                .to_u64()
                .expect("reduced below the modulus")
        })
        .collect();
    Some(x)
}

/// A composable pair `Z^p --d_in--> Z^m --d_out--> Z^q` prepared for homology with
/// several coefficient moduli: the Smith form of `d_out` does not depend on `n`.
///
/// With `U d_out V = D`, the kernel mod `n` in coordinates `y = V^{-1} x` is the diagonal
/// lattice `y_j ∈ s_j Z` with `s_j = n / gcd(d_j, n)` (and `s_j = 1` past the rank). The
/// images of `d_in` and of `n Z^m`, rewritten in that lattice's basis, form the relation
/// matrix whose invariant factors are the answer.
pub struct PreparedComplex {
    m: usize,
    diagonal: Vec<BigInt>,
    /// `V^{-1} d_in`
    image: BigMatrix,
}

impl PreparedComplex {
    pub fn new(d_in: &IntMatrix, d_out: &IntMatrix) -> Self {
        assert_eq!(d_in.rows(), d_out.cols(), "maps are not composable");
        let m = d_out.cols();
        let snf = smith_normal_form(d_out, Transforms { left: false, right: false, right_inv: true });
        let vinv = snf.right_inv.expect("inverse transform requested");
        let image = if m == 0 { Matrix::zeros(0, d_in.cols()) } else { vinv.mul(&d_in.to_big()) };
        Self { m, diagonal: snf.diagonal, image }
    }

    /// `ker(d_out mod n) / im(d_in mod n)`; requires `d_out · d_in ≡ 0 (mod n)`.
    pub fn homology_mod(&self, n: u64) -> AbelianGroupShape {
        assert!(n >= 1);
        let m = self.m;
        if m == 0 {
            return AbelianGroupShape::trivial();
        }
        let big_n = BigInt::from(n);
        let scale: Vec<BigInt> = (0..m)
            .map(|j| match self.diagonal.get(j) {
                Some(d) => &big_n / d.gcd(&big_n),
                None => BigInt::one(),
            })
            .collect();
        let p = self.image.cols();
        let mut rel = Matrix::zeros(m, p + m);
        for j in 0..m {
            for c in 0..p {
                let x = &self.image[(j, c)];
                debug_assert!(x.is_multiple_of(&scale[j]), "image must lie in the kernel lattice");
                rel[(j, c)] = x / &scale[j];
            }
            rel[(j, p + j)] = &big_n / &scale[j];
        }
        let factors = smith_normal_form_big(&rel, Transforms::NONE).diagonal;
        debug_assert_eq!(factors.len(), m, "relations include n·Z^m, so the rank is full");
        AbelianGroupShape::from_cyclic_orders(
            factors.iter().map(|d| d.to_u64().expect("invariant factor divides a power of n")),
        )
    }
}

/// `ker(d_out mod n) / im(d_in mod n)` for integer maps `d_in: Z^p -> Z^m` and
/// `d_out: Z^m -> Z^q` with `d_out · d_in ≡ 0 (mod n)`.
pub fn homology_mod(d_in: &IntMatrix, d_out: &IntMatrix, n: u64) -> AbelianGroupShape {
    PreparedComplex::new(d_in, d_out).homology_mod(n)
}
