use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use super::matrix::{GroupElem, IntMat, MatOps};
use super::rep::{Form, MatrixRep};
use crate::error::{Error, Result};
use crate::rings::{Code, Ring, RingElem, Tables};
use crate::rootsys::{Root, RootSystem, RootType};

/// `G(R)` for a matrix representation and a tabulated finite ring.
#[derive(Clone)]
pub struct Chevalley {
    pub rep: Arc<MatrixRep>,
    pub ring: Ring,
    /// `J` or the `ad` basis reduced into the ring, for membership tests.
    forms: Arc<Vec<GroupElem>>,
}

/// Sign `eta` with `x_a(r)^{n_w} = x_b(eta r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylImage {
    pub root: Root,
    pub image: Root,
    pub eta: i8,
}

impl Chevalley {
    pub fn new(rep: Arc<MatrixRep>, ring: Ring) -> Result<Self> {
        let t = ring.tables()?;
        let ops = MatOps::new(rep.d, t);
        let code = |x: i64| ring.from_int(x).code() as Code;
        let forms = match (&rep.gram, rep.form) {
            (_, Form::Adjoint) => rep.ad_basis.iter().map(|m| ops.from_int(m, code)).collect(),
            (Some(j), _) => vec![ops.from_int(j, code)],
            (None, _) => Vec::new(),
        };
        Ok(Chevalley { rep, ring, forms: Arc::new(forms) })
    }

    /// Parses group specs `SL3`, `Sp4`, `SO7`, `O8`, `G2adj`, `F4adj`.
    pub fn parse(spec: &str, ring: Ring) -> Result<Self> {
        Self::new(Arc::new(parse_rep(spec)?), ring)
    }

    pub fn sys(&self) -> &RootSystem {
        &self.rep.sys
    }

    pub fn d(&self) -> usize {
        self.rep.d
    }

    pub fn label(&self) -> String {
        format!("{}({})", self.rep.label(), self.ring)
    }

    pub fn t(&self) -> &Tables {
        self.ring.tables().expect("checked at construction")
    }

    pub fn ops(&self) -> MatOps<'_> {
        MatOps::new(self.rep.d, self.t())
    }

    pub fn code(&self, r: &RingElem) -> Code {
        r.code() as Code
    }

    pub fn int_code(&self, n: i64) -> Code {
        self.ring.from_int(n).code() as Code
    }

    pub fn identity(&self) -> GroupElem {
        self.ops().identity()
    }

    pub fn mul(&self, a: &[Code], b: &[Code]) -> GroupElem {
        self.ops().mul(a, b)
    }

    pub fn inv(&self, a: &[Code]) -> GroupElem {
        self.ops().inv(a).expect("group elements are invertible")
    }

    pub fn product<'a>(&self, it: impl IntoIterator<Item = &'a GroupElem>) -> GroupElem {
        it.into_iter().fold(self.identity(), |acc, g| self.mul(&acc, g))
    }

    /// `a^-1 b^-1 a b`.
    pub fn comm(&self, a: &[Code], b: &[Code]) -> GroupElem {
        let ops = self.ops();
        let ab = ops.mul(a, b);
        let ba = ops.mul(b, a);
        ops.mul(&self.inv(&ba), &ab)
    }

    /// `h^-1 g h`.
    pub fn conj(&self, g: &[Code], h: &[Code]) -> GroupElem {
        let ops = self.ops();
        ops.mul(&self.inv(h), &ops.mul(g, h))
    }

    pub fn from_int_mat(&self, m: &IntMat) -> GroupElem {
        self.ops().from_int(m, |x| self.int_code(x))
    }

    /// `x_a(r) = 1 + r M_1 + ... + r^q M_q`.
    pub fn x_code(&self, a: Root, r: Code) -> GroupElem {
        let t = self.t();
        let mut m: Vec<Code> = self.identity().into_vec();
        let d = self.d();
        let mut rp = t.one;
        for mi in &self.rep.divided[a.0] {
            rp = t.mul(rp, r);
            if rp == 0 {
                break;
            }
            for (k, &c) in mi.a.iter().enumerate() {
                if c != 0 {
                    m[k] = t.add(m[k], t.mul(self.int_code(c), rp));
                }
            }
        }
        debug_assert_eq!(m.len(), d * d);
        m.into_boxed_slice()
    }

    pub fn x(&self, a: Root, r: &RingElem) -> GroupElem {
        self.x_code(a, self.code(r))
    }

    pub fn eval_word(&self, word: &[(Root, RingElem)]) -> GroupElem {
        word.iter().fold(self.identity(), |acc, (a, r)| self.mul(&acc, &self.x(*a, r)))
    }

    /// `n_a(t) = x_a(t) x_{-a}(-t^-1) x_a(t)`.
    pub fn n_t(&self, a: Root, t: &RingElem) -> Result<GroupElem> {
        let ti = t.inv().ok_or_else(|| Error::NotUnit(t.to_string()))?;
        let na = self.sys().neg(a);
        let xa = self.x(a, t);
        Ok(self.mul(&self.mul(&xa, &self.x(na, &-ti)), &xa))
    }

    /// Weyl representative `n_a = x_a(1) x_{-a}(-1) x_a(1)`.
    pub fn n(&self, a: Root) -> GroupElem {
        self.n_t(a, &self.ring.one()).expect("1 is a unit")
    }

    /// `h_a(t) = n_a(t) n_a(1)^-1`.
    pub fn h(&self, a: Root, t: &RingElem) -> Result<GroupElem> {
        let nt = self.n_t(a, t)?;
        let n1 = self.n_t(a, &-self.ring.one())?;
        Ok(self.mul(&nt, &n1))
    }

    /// Parses `x(<root>,<ring-elt>)`, `h(<root>,<unit>)`, `1`, or a product of
    /// these joined by `*`.
    pub fn parse_element(&self, text: &str) -> Result<GroupElem> {
        let bad = || Error::Config(format!("element spec `{text}`: expected x(<root>,<ring-elt>) or h(<root>,<unit>)"));
        let mut acc = self.identity();
        for factor in split_top(text, '*') {
            let f = factor.trim();
            if f == "1" {
                continue;
            }
            let (head, inner) = f.split_once('(').ok_or_else(bad)?;
            let inner = inner.strip_suffix(')').ok_or_else(bad)?;
            let mut args = split_top(inner, ',');
            if args.len() < 2 {
                return Err(bad());
            }
            let root = self.sys().parse_root(&args.remove(0))?;
            let value = self.ring.parse_elem(&args.join(","))?;
            let x = match head.trim() {
                "x" => self.x(root, &value),
                "h" => self.h(root, &value)?,
                _ => return Err(bad()),
            };
            acc = self.mul(&acc, &x);
        }
        Ok(acc)
    }

    /// Product of `h_{g_i}(t_i)`.
    pub fn torus_word(&self, word: &[(Root, RingElem)]) -> Result<GroupElem> {
        word.iter().try_fold(self.identity(), |acc, (g, t)| Ok(self.mul(&acc, &self.h(*g, t)?)))
    }

    /// `n_w` for a word in the simple reflections (0-based indices).
    pub fn weyl_rep(&self, word: &[usize]) -> GroupElem {
        word.iter().fold(self.identity(), |acc, &i| self.mul(&acc, &self.n(self.sys().simple(i))))
    }

    /// For each root `a`, the root `b` and sign `eta` with `x_a(1)^{n_w} = x_b(eta)`.
    pub fn weyl_action(&self, nw: &[Code]) -> Result<Vec<WeylImage>> {
        let one = self.ring.one();
        let minus = -one.clone();
        let mut out = Vec::new();
        for a in self.sys().roots() {
            let img = self.conj(&self.x(a, &one), nw);
            let hit = self.sys().roots().find_map(|b| {
                if self.x(b, &one) == img {
                    Some((b, 1))
                } else if self.x(b, &minus) == img {
                    Some((b, -1))
                } else {
                    None
                }
            });
            let (b, eta) = hit.ok_or_else(|| Error::Malformed("n_w does not normalize root groups".into()))?;
            out.push(WeylImage { root: a, image: b, eta });
        }
        Ok(out)
    }

    /// Polynomial membership conditions: `det = 1` for SL, `g^T J g = J` for the
    /// classical forms, and the Lie-algebra automorphism condition for adjoint forms.
    pub fn is_member(&self, g: &[Code]) -> bool {
        let ops = self.ops();
        match self.rep.form {
            Form::SpecialLinear => ops.det(g) == self.t().one,
            Form::Adjoint => self.is_lie_automorphism(g),
            _ => {
                let j = &self.forms[0];
                ops.mul(&ops.mul(&ops.transpose(g), j), g) == *j
            }
        }
    }

    fn is_lie_automorphism(&self, g: &[Code]) -> bool {
        let ops = self.ops();
        let t = self.t();
        let d = self.d();
        let Some(gi) = ops.inv(g) else { return false };
        let ads = &self.forms;
        for k in 0..d {
            let lhs = ops.mul(&ops.mul(g, &ads[k]), &gi);
            let mut rhs: Vec<Code> = vec![0; d * d];
            for l in 0..d {
                let c = g[l * d + k];
                if c == 0 {
                    continue;
                }
                for (e, &v) in rhs.iter_mut().zip(ads[l].iter()) {
                    *e = t.add(*e, t.mul(c, v));
                }
            }
            if *lhs != rhs[..] {
                return false;
            }
        }
        true
    }

    /// Additive generators of the ring: `p^i`-basis elements in each component.
    pub fn additive_generators(&self) -> Vec<RingElem> {
        let comps = self.ring.components();
        let mut out = Vec::new();
        for (ci, c) in comps.iter().enumerate() {
            let n = c.size().unwrap() as u32;
            let p = c.characteristic() as u32;
            let mut k = 1;
            while k < n {
                let mut parts: Vec<RingElem> = comps.iter().map(|x| x.zero()).collect();
                parts[ci] = c.elem(k);
                out.push(self.ring.tuple(&parts).unwrap());
                k *= p;
            }
        }
        out
    }

    /// `x_a(b)` for every root and every additive generator `b`.
    pub fn root_generators(&self) -> Vec<GroupElem> {
        let gens = self.additive_generators();
        self.sys().roots().flat_map(|a| gens.iter().map(move |b| self.x(a, b))).collect()
    }

    /// `x_a(r)` for every root and every ring element.
    pub fn all_root_elements(&self) -> Vec<GroupElem> {
        let n = self.t().size as u32;
        self.sys().roots().flat_map(|a| (0..n).map(move |r| self.x_code(a, r as Code))).collect()
    }

    pub fn root_group(&self, a: Root) -> Vec<GroupElem> {
        (0..self.t().size as u32).map(|r| self.x_code(a, r as Code)).collect()
    }

    /// Scalar matrices in the group (the center for the classical forms).
    pub fn scalar_center(&self) -> Vec<GroupElem> {
        if self.rep.form == Form::Adjoint {
            return vec![self.identity()];
        }
        let ops = self.ops();
        (1..self.t().size as u32)
            .map(|c| ops.scale(c as Code, &self.identity()))
            .filter(|g| self.is_member(g))
            .collect()
    }

    pub fn entries(&self, g: &[Code]) -> Vec<RingElem> {
        g.iter().map(|&c| self.ring.elem(c as u32)).collect()
    }

    pub fn format(&self, g: &[Code]) -> String {
        let d = self.d();
        let mut s = String::from("[");
        for i in 0..d {
            if i > 0 {
                s.push_str("; ");
            }
            let row: Vec<String> = (0..d).map(|j| self.ring.elem(g[i * d + j] as u32).to_string()).collect();
            let _ = write!(s, "{}", row.join(" "));
        }
        s.push(']');
        s
    }
}

/// Splits at `sep` outside parentheses.
fn split_top(text: &str, sep: char) -> Vec<String> {
    let (mut out, mut cur, mut depth) = (Vec::new(), String::new(), 0i32);
    for c in text.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    out.push(cur);
    out
}

/// Parses `SL<n>`, `Sp<2m>`, `SO<2m+1>`, `O<2m>`/`SO<2m>`, `<X><n>adj`.
pub fn parse_rep(spec: &str) -> Result<MatrixRep> {
    let bad = || Error::Config(format!("unknown group `{spec}`"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    if let Some(rest) = spec.strip_suffix("adj") {
        let sys = RootSystem::parse(rest)?;
        return MatrixRep::adjoint(Arc::new(sys));
    }
    if let Some(n) = spec.strip_prefix("SL") {
        return MatrixRep::classical(RootType::A, num(n)?.checked_sub(1).ok_or_else(bad)?);
    }
    if let Some(n) = spec.strip_prefix("Sp") {
        let n = num(n)?;
        if n % 2 != 0 {
            return Err(bad());
        }
        return MatrixRep::classical(RootType::C, n / 2);
    }
    let n = spec.strip_prefix("SO").or_else(|| spec.strip_prefix('O')).ok_or_else(bad)?;
    let n = num(n)?;
    if n % 2 == 1 {
        MatrixRep::classical(RootType::B, n / 2)
    } else {
        MatrixRep::classical(RootType::D, n / 2)
    }
}
