//! Dense integer matrices (for building representations) and square matrices
//! over ring element codes (for group computations).

use crate::rings::{Code, Tables};

/// Square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    pub d: usize,
    pub a: Vec<i64>,
}

impl IntMat {
    pub fn zero(d: usize) -> Self {
        IntMat { d, a: vec![0; d * d] }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zero(d);
        for i in 0..d {
            m.a[i * d + i] = 1;
        }
        m
    }

    pub fn unit(d: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(d);
        m.a[i * d + j] = 1;
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.d + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.a[i * self.d + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, o: &IntMat) -> IntMat {
        let d = self.d;
        let mut r = IntMat::zero(d);
        for i in 0..d {
            for k in 0..d {
                let x = self.a[i * d + k];
                if x == 0 {
                    continue;
                }
                for j in 0..d {
                    r.a[i * d + j] += x * o.a[k * d + j];
                }
            }
        }
        r
    }

    pub fn add(&self, o: &IntMat) -> IntMat {
        IntMat { d: self.d, a: self.a.iter().zip(&o.a).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, o: &IntMat) -> IntMat {
        IntMat { d: self.d, a: self.a.iter().zip(&o.a).map(|(x, y)| x - y).collect() }
    }

    pub fn scale(&self, c: i64) -> IntMat {
        IntMat { d: self.d, a: self.a.iter().map(|x| x * c).collect() }
    }

    pub fn transpose(&self) -> IntMat {
        let d = self.d;
        let mut r = IntMat::zero(d);
        for i in 0..d {
            for j in 0..d {
                r.a[j * d + i] = self.a[i * d + j];
            }
        }
        r
    }

    /// Lie bracket `AB - BA`.
    pub fn bracket(&self, o: &IntMat) -> IntMat {
        self.mul(o).sub(&o.mul(self))
    }

    /// Exact quotient by `c`, if every entry is divisible.
    pub fn div_exact(&self, c: i64) -> Option<IntMat> {
        if self.a.iter().any(|x| x % c != 0) {
            return None;
        }
        Some(IntMat { d: self.d, a: self.a.iter().map(|x| x / c).collect() })
    }

    /// `c` with `self = c * o`, if `o` is nonzero and such an integer exists.
    pub fn ratio(&self, o: &IntMat) -> Option<i64> {
        let k = o.a.iter().position(|&x| x != 0)?;
        if self.a[k] % o.a[k] != 0 {
            return None;
        }
        let c = self.a[k] / o.a[k];
        (*self == o.scale(c)).then_some(c)
    }

    pub fn nonzero(&self) -> Vec<(usize, usize, i64)> {
        let d = self.d;
        (0..d * d).filter(|&k| self.a[k] != 0).map(|k| (k / d, k % d, self.a[k])).collect()
    }
}

pub type GroupElem = Box<[Code]>;

/// Arithmetic on `d x d` matrices whose entries are codes of a tabulated ring.
#[derive(Clone, Copy)]
pub struct MatOps<'a> {
    pub d: usize,
    pub t: &'a Tables,
}

impl<'a> MatOps<'a> {
    pub fn new(d: usize, t: &'a Tables) -> Self {
        MatOps { d, t }
    }

    pub fn identity(&self) -> GroupElem {
        let d = self.d;
        let mut m = vec![0; d * d];
        for i in 0..d {
            m[i * d + i] = self.t.one;
        }
        m.into_boxed_slice()
    }

    pub fn zero(&self) -> GroupElem {
        vec![0; self.d * self.d].into_boxed_slice()
    }

    pub fn is_identity(&self, m: &[Code]) -> bool {
        let d = self.d;
        (0..d).all(|i| (0..d).all(|j| m[i * d + j] == if i == j { self.t.one } else { 0 }))
    }

    pub fn mul(&self, a: &[Code], b: &[Code]) -> GroupElem {
        let d = self.d;
        let n = self.t.size;
        let (add, mul) = (&self.t.add, &self.t.mul);
        let mut out = vec![0 as Code; d * d];
        for i in 0..d {
            let orow = &mut out[i * d..(i + 1) * d];
            for k in 0..d {
                let x = a[i * d + k] as usize;
                if x == 0 {
                    continue;
                }
                let mrow = &mul[x * n..(x + 1) * n];
                let brow = &b[k * d..(k + 1) * d];
                for j in 0..d {
                    let y = brow[j];
                    if y != 0 {
                        let p = mrow[y as usize] as usize;
                        orow[j] = add[orow[j] as usize * n + p];
                    }
                }
            }
        }
        out.into_boxed_slice()
    }

    /// Whether `ab = ba`, computed entrywise without allocating.
    pub fn commute(&self, a: &[Code], b: &[Code]) -> bool {
        let d = self.d;
        let t = self.t;
        for i in 0..d {
            for j in 0..d {
                let mut x: Code = 0;
                let mut y: Code = 0;
                for k in 0..d {
                    let (p, q) = (a[i * d + k], b[k * d + j]);
                    if p != 0 && q != 0 {
                        x = t.add(x, t.mul(p, q));
                    }
                    let (p, q) = (b[i * d + k], a[k * d + j]);
                    if p != 0 && q != 0 {
                        y = t.add(y, t.mul(p, q));
                    }
                }
                if x != y {
                    return false;
                }
            }
        }
        true
    }

    pub fn add(&self, a: &[Code], b: &[Code]) -> GroupElem {
        a.iter().zip(b).map(|(&x, &y)| self.t.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[Code], b: &[Code]) -> GroupElem {
        a.iter().zip(b).map(|(&x, &y)| self.t.sub(x, y)).collect()
    }

    pub fn scale(&self, c: Code, a: &[Code]) -> GroupElem {
        a.iter().map(|&x| self.t.mul(c, x)).collect()
    }

    pub fn transpose(&self, a: &[Code]) -> GroupElem {
        let d = self.d;
        (0..d * d).map(|k| a[(k % d) * d + k / d]).collect()
    }

    pub fn pow(&self, a: &[Code], mut e: u64) -> GroupElem {
        let mut base: GroupElem = a.into();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Inverse by Gauss-Jordan elimination with unit pivots; falls back to
    /// powering when no unit pivot exists (possible over non-local rings).
    pub fn inv(&self, a: &[Code]) -> Option<GroupElem> {
        self.inv_gauss(a).or_else(|| {
            self.t.inv(self.det(a))?;
            self.inv_power(a)
        })
    }

    fn inv_gauss(&self, a: &[Code]) -> Option<GroupElem> {
        let d = self.d;
        let t = self.t;
        let mut m: Vec<Code> = a.to_vec();
        let mut r: Vec<Code> = self.identity().into_vec();
        for col in 0..d {
            let piv = (col..d).find(|&i| t.inv(m[i * d + col]).is_some())?;
            if piv != col {
                for j in 0..d {
                    m.swap(piv * d + j, col * d + j);
                    r.swap(piv * d + j, col * d + j);
                }
            }
            let pinv = t.inv(m[col * d + col]).unwrap();
            for j in 0..d {
                m[col * d + j] = t.mul(pinv, m[col * d + j]);
                r[col * d + j] = t.mul(pinv, r[col * d + j]);
            }
            for i in 0..d {
                let f = m[i * d + col];
                if i == col || f == 0 {
                    continue;
                }
                for j in 0..d {
                    m[i * d + j] = t.sub(m[i * d + j], t.mul(f, m[col * d + j]));
                    r[i * d + j] = t.sub(r[i * d + j], t.mul(f, r[col * d + j]));
                }
            }
        }
        Some(r.into_boxed_slice())
    }

    fn inv_power(&self, a: &[Code]) -> Option<GroupElem> {
        let mut prev: GroupElem = self.identity();
        let mut cur: GroupElem = a.into();
        for _ in 0..100_000 {
            if self.is_identity(&cur) {
                return Some(prev);
            }
            prev = cur.clone();
            cur = self.mul(&cur, a);
        }
        None
    }

    /// Division-free determinant (Bird's algorithm).
    pub fn det(&self, a: &[Code]) -> Code {
        let d = self.d;
        let t = self.t;
        let mut x: Vec<Code> = a.to_vec();
        for _ in 1..d {
            let mut mu = vec![0 as Code; d * d];
            let mut tail: Code = 0;
            for i in (0..d).rev() {
                mu[i * d + i] = t.neg[tail as usize];
                tail = t.add(tail, x[i * d + i]);
                for j in i + 1..d {
                    mu[i * d + j] = x[i * d + j];
                }
            }
            x = self.mul(&mu, a).into_vec();
        }
        if d.is_multiple_of(2) {
            t.neg[x[0] as usize]
        } else {
            x[0]
        }
    }

    /// Reduces an integer matrix into the ring.
    pub fn from_int(&self, m: &IntMat, from_int: impl Fn(i64) -> Code) -> GroupElem {
        m.a.iter().map(|&x| if x == 0 { 0 } else { from_int(x) }).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Ring;
    use proptest::prelude::*;

    fn code_of(r: &Ring, x: i64) -> Code {
        r.from_int(x).code() as Code
    }

    #[test]
    fn determinant_matches_expansion() {
        let r = Ring::parse("F7").unwrap();
        let ops = MatOps::new(3, r.tables().unwrap());
        let m: Vec<Code> = [2, 1, 3, 0, 4, 5, 6, 1, 1].iter().map(|&x| code_of(&r, x)).collect();
        // 2(4-5) - 1(0-30) + 3(0-24) = -2 + 30 - 72 = -44 = 5 mod 7
        assert_eq!(ops.det(&m), 5);
        let ops2 = MatOps::new(2, r.tables().unwrap());
        assert_eq!(ops2.det(&[2, 1, 3, 2]), 1);
        assert_eq!(ops2.det(&[2, 1, 3, 5]), 0);
    }

    proptest! {
        #[test]
        fn inverse_and_det(entries in prop::collection::vec(0u16..5, 16)) {
            let r = Ring::parse("F5").unwrap();
            let ops = MatOps::new(4, r.tables().unwrap());
            let det = ops.det(&entries);
            match ops.inv(&entries) {
                Some(i) => {
                    prop_assert!(det != 0);
                    prop_assert!(ops.is_identity(&ops.mul(&entries, &i)));
                    prop_assert!(ops.is_identity(&ops.mul(&i, &entries)));
                }
                None => prop_assert_eq!(det, 0),
            }
        }

        #[test]
        fn det_is_multiplicative(a in prop::collection::vec(0u16..9, 9), b in prop::collection::vec(0u16..9, 9)) {
            let r = Ring::parse("F9").unwrap();
            let t = r.tables().unwrap();
            let ops = MatOps::new(3, t);
            prop_assert_eq!(ops.det(&ops.mul(&a, &b)), t.mul(ops.det(&a), ops.det(&b)));
            prop_assert_eq!(ops.commute(&a, &b), ops.mul(&a, &b) == ops.mul(&b, &a));
        }
    }
}
