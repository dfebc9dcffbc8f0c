//! Exhaustive evaluation of formulas over an enumerated group.
//!
//! Quantifiers range over every element. A guard that mentions only the bound
//! variable (the `A` in `A h. (A -> B)` or `E h. (A & B)`) is evaluated once
//! and its solution set reused, which turns the double-centralizer formula
//! into one centralizer scan plus one pass per candidate.
//!
//! Sets of the shape `E a. (A(a) & ... x = t(a, ..))`, possibly with further
//! conjuncts, are produced by running over the witnesses instead of testing
//! every `x`.

use std::cell::{Cell, OnceCell, RefCell};
use std::hash::Hash;
use std::rc::Rc;

use rustc_hash::FxHashMap;

use super::formula::{Connective, Formula, Quantifier, Term};
use crate::chevgroup::{EnumeratedGroup, GroupElem};
use crate::error::{Error, Result};

/// Atomic equality checks allowed by default.
pub const DEFAULT_EVAL_BUDGET: u64 = 2_000_000_000;

/// A finite group with its elements listed; quantifiers range over the list.
pub trait FiniteGroup {
    type Elem: Clone + Eq + Hash;

    fn order(&self) -> usize;
    fn element(&self, i: usize) -> &Self::Elem;
    fn contains(&self, x: &Self::Elem) -> bool {
        self.index_of(x).is_some()
    }
    fn index_of(&self, x: &Self::Elem) -> Option<usize>;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn label(&self) -> String;

    fn commute(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }
}

impl FiniteGroup for EnumeratedGroup {
    type Elem = GroupElem;

    fn order(&self) -> usize {
        self.elements.len()
    }

    fn element(&self, i: usize) -> &GroupElem {
        &self.elements[i]
    }

    fn index_of(&self, x: &GroupElem) -> Option<usize> {
        EnumeratedGroup::index_of(self, x)
    }

    fn identity(&self) -> GroupElem {
        self.group.identity()
    }

    fn mul(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        self.group.mul(a, b)
    }

    fn inv(&self, a: &GroupElem) -> GroupElem {
        self.group.inv(a)
    }

    fn label(&self) -> String {
        self.group.label()
    }

    fn commute(&self, a: &GroupElem, b: &GroupElem) -> bool {
        self.group.ops().commute(a, b)
    }
}

struct Ctx<'a, G: FiniteGroup> {
    e: &'a G,
    params: Vec<G::Elem>,
    param_inv: Vec<G::Elem>,
    inv: Vec<OnceCell<G::Elem>>,
    memo: RefCell<FxHashMap<*const Formula, Rc<Vec<u32>>>>,
    closed: RefCell<FxHashMap<*const Formula, bool>>,
    budget: u64,
    used: Cell<u64>,
}

type Env<'f> = Vec<(&'f str, u32)>;

impl<'a, G: FiniteGroup> Ctx<'a, G> {
    fn new(f: &Formula, e: &'a G, params: &[G::Elem], budget: u64) -> Result<Self> {
        let arity = f.arity();
        if arity > params.len() {
            return Err(Error::UnknownParam(arity));
        }
        for (k, p) in params.iter().enumerate() {
            if !e.contains(p) {
                return Err(Error::Malformed(format!("parameter @{} is not in {}", k + 1, e.label())));
            }
        }
        let param_inv = params.iter().map(|p| e.inv(p)).collect();
        Ok(Ctx {
            e,
            params: params.to_vec(),
            param_inv,
            inv: (0..e.order()).map(|_| OnceCell::new()).collect(),
            memo: RefCell::default(),
            closed: RefCell::default(),
            budget,
            used: Cell::new(0),
        })
    }

    fn lookup(env: &Env<'_>, v: &str) -> Result<u32> {
        env.iter()
            .rev()
            .find(|(w, _)| *w == v)
            .map(|&(_, i)| i)
            .ok_or_else(|| Error::Malformed(format!("unbound variable {v}")))
    }

    fn term(&self, t: &Term, env: &Env<'_>) -> Result<G::Elem> {
        let g = self.e;
        Ok(match t {
            Term::Var(v) => g.element(Self::lookup(env, v)? as usize).clone(),
            Term::Param(k) => self.params[k - 1].clone(),
            Term::One => g.identity(),
            Term::Mul(a, b) => g.mul(&self.term(a, env)?, &self.term(b, env)?),
            Term::Inv(a) => match &**a {
                Term::Var(v) => {
                    let i = Self::lookup(env, v)? as usize;
                    self.inv[i].get_or_init(|| g.inv(g.element(i))).clone()
                }
                Term::Param(k) => self.param_inv[k - 1].clone(),
                other => g.inv(&self.term(other, env)?),
            },
        })
    }

    fn tick(&self) -> Result<()> {
        let n = self.used.get() + 1;
        if n > self.budget {
            return Err(Error::Budget(self.budget));
        }
        self.used.set(n);
        Ok(())
    }

    fn atom(&self, a: &Term, b: &Term, env: &Env<'_>) -> Result<bool> {
        self.tick()?;
        // `s*t=t*s` is a commutation test.
        if let (Term::Mul(s, t), Term::Mul(t2, s2)) = (a, b) {
            if s == s2 && t == t2 {
                return Ok(self.e.commute(&self.term(s, env)?, &self.term(t, env)?));
            }
        }
        Ok(self.term(a, env)? == self.term(b, env)?)
    }

    fn only_free(&self, f: &Formula, v: &str) -> bool {
        *self.closed.borrow_mut().entry(f as *const Formula).or_insert_with(|| f.free_vars().iter().all(|w| w == v))
    }

    /// Elements satisfying a guard whose only free variable is `v`.
    fn guard_set<'f>(&self, v: &'f str, guard: &'f Formula, env: &mut Env<'f>) -> Result<Rc<Vec<u32>>> {
        let key = guard as *const Formula;
        if let Some(s) = self.memo.borrow().get(&key) {
            return Ok(s.clone());
        }
        let out = Rc::new(self.extension(v, guard, env)?);
        self.memo.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    /// Sorted indices of the `x` satisfying `f` under `env`.
    fn extension<'f>(&self, x: &'f str, f: &'f Formula, env: &mut Env<'f>) -> Result<Vec<u32>> {
        if let Some(mut s) = self.solve(x, f, env)? {
            s.sort_unstable();
            s.dedup();
            return Ok(s);
        }
        let mut out = Vec::new();
        for i in 0..self.e.order() as u32 {
            env.push((x, i));
            let ok = self.eval(f, env);
            env.pop();
            if ok? {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// The satisfying `x` listed through witnesses, or `None` when `f` has no
    /// usable shape. May contain repeats.
    fn solve<'f>(&self, x: &'f str, f: &'f Formula, env: &mut Env<'f>) -> Result<Option<Vec<u32>>> {
        match f {
            Formula::Eq(a, b) => {
                let t = match (a, b) {
                    (Term::Var(v), t) | (t, Term::Var(v)) if v == x && !t.mentions(x) => t,
                    _ => return Ok(None),
                };
                self.tick()?;
                Ok(Some(self.e.index_of(&self.term(t, env)?).map(|i| i as u32).into_iter().collect()))
            }
            Formula::Bin(Connective::Or, a, b) => {
                let Some(mut s) = self.solve(x, a, env)? else { return Ok(None) };
                let Some(t) = self.solve(x, b, env)? else { return Ok(None) };
                s.extend(t);
                Ok(Some(s))
            }
            Formula::Bin(Connective::And, a, b) => {
                let (mut s, rest) = match self.solve(x, a, env)? {
                    Some(s) => (s, b),
                    None => match self.solve(x, b, env)? {
                        Some(s) => (s, a),
                        None => return Ok(None),
                    },
                };
                s.sort_unstable();
                s.dedup();
                let mut out = Vec::with_capacity(s.len());
                for i in s {
                    env.push((x, i));
                    let ok = self.eval(rest, env);
                    env.pop();
                    if ok? {
                        out.push(i);
                    }
                }
                Ok(Some(out))
            }
            Formula::Quant(Quantifier::Exists, v, body) if v != x => {
                let Formula::Bin(Connective::And, guard, rest) = &**body else { return Ok(None) };
                if !self.only_free(guard, v) {
                    return Ok(None);
                }
                let set = self.guard_set(v, guard, env)?;
                let mut out = Vec::new();
                for &i in set.iter() {
                    env.push((v, i));
                    let r = self.solve(x, rest, env);
                    env.pop();
                    match r? {
                        Some(s) => out.extend(s),
                        None => return Ok(None),
                    }
                }
                Ok(Some(out))
            }
            _ => Ok(None),
        }
    }

    fn eval<'f>(&self, f: &'f Formula, env: &mut Env<'f>) -> Result<bool> {
        match f {
            Formula::Eq(a, b) => self.atom(a, b, env),
            Formula::Not(g) => Ok(!self.eval(g, env)?),
            Formula::Bin(c, a, b) => Ok(match c {
                Connective::And => self.eval(a, env)? && self.eval(b, env)?,
                Connective::Or => self.eval(a, env)? || self.eval(b, env)?,
                Connective::Implies => !self.eval(a, env)? || self.eval(b, env)?,
            }),
            Formula::Quant(q, v, body) => {
                let forall = *q == Quantifier::Forall;
                let guarded = match (&**body, forall) {
                    (Formula::Bin(Connective::Implies, a, b), true) | (Formula::Bin(Connective::And, a, b), false)
                        if self.only_free(a, v) =>
                    {
                        Some((a, b))
                    }
                    _ => None,
                };
                if let Some((guard, rest)) = guarded {
                    let set = self.guard_set(v, guard, env)?;
                    for &i in set.iter() {
                        env.push((v, i));
                        let r = self.eval(rest, env);
                        env.pop();
                        if r? != forall {
                            return Ok(!forall);
                        }
                    }
                    return Ok(forall);
                }
                for i in 0..self.e.order() as u32 {
                    env.push((v, i));
                    let r = self.eval(body, env);
                    env.pop();
                    if r? != forall {
                        return Ok(!forall);
                    }
                }
                Ok(forall)
            }
        }
    }
}

/// `{g in E : F(g, params)}` as sorted element indices.
pub fn define_set<G: FiniteGroup>(f: &Formula, e: &G, params: &[G::Elem], budget: u64) -> Result<Vec<usize>> {
    let free = f.free_vars();
    if free.len() != 1 {
        return Err(Error::FreeVariables(free.len()));
    }
    let v = free.into_iter().next().expect("one free variable");
    let ctx = Ctx::new(f, e, params, budget)?;
    Ok(ctx.extension(&v, f, &mut Vec::new())?.into_iter().map(|i| i as usize).collect())
}

/// Truth value under an assignment of element indices to the free variables.
pub fn holds<G: FiniteGroup>(
    f: &Formula,
    e: &G,
    params: &[G::Elem],
    assignment: &[(&str, usize)],
    budget: u64,
) -> Result<bool> {
    if let Some(v) = f.free_vars().iter().find(|v| !assignment.iter().any(|(w, _)| w == v)) {
        return Err(Error::Malformed(format!("unbound variable {v}")));
    }
    let ctx = Ctx::new(f, e, params, budget)?;
    let mut env: Env<'_> = assignment.iter().map(|&(w, i)| (w, i as u32)).collect();
    ctx.eval(f, &mut env)
}
