//! Buchberger's algorithm with a step budget.

use super::poly::{Mono, Poly};
use crate::error::{CatError, Result};
use crate::field::Field;
use std::collections::{BTreeSet, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

/// Reduction steps allowed per basis computation unless configured.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

static BUDGET: AtomicU64 = AtomicU64::new(0);

/// The current step budget: the last value set, else `TANGENTLAB_BUDGET`,
/// else [`DEFAULT_BUDGET`].
pub fn step_budget() -> u64 {
    match BUDGET.load(Ordering::Relaxed) {
        0 => std::env::var("TANGENTLAB_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .filter(|&n| n > 0)
            .unwrap_or(DEFAULT_BUDGET),
        n => n,
    }
}

pub fn set_step_budget(n: u64) {
    BUDGET.store(n.max(1), Ordering::Relaxed);
}

struct Steps {
    used: u64,
    limit: u64,
}

impl Steps {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(CatError::Budget(format!("Gröbner basis needs more than {} reduction steps", self.limit)));
        }
        Ok(())
    }
}

/// Fully reduces `p` modulo `basis`, whose elements are monic.
fn reduce_counting<F: Field>(p: &Poly<F>, basis: &[Poly<F>], steps: &mut Steps) -> Result<Poly<F>> {
    let mut rest = p.clone();
    let mut out = Poly::zero(p.nvars());
    while let Some((m, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
        match basis.iter().find(|g| g.leading().is_some_and(|(lm, _)| lm.divides(&m))) {
            Some(g) => {
                steps.tick()?;
                let lm = g.leading().expect("non-zero").0;
                rest = rest.sub(&g.mul_term(&lm.quotient(&m), &c));
            }
            None => {
                let t = Poly::term(p.nvars(), m, c);
                out = out.add(&t);
                rest = rest.sub(&t);
            }
        }
    }
    Ok(out)
}

/// Normal form of `p` modulo a reduced Gröbner basis.
pub fn normal_form<F: Field>(p: &Poly<F>, basis: &[Poly<F>]) -> Poly<F> {
    let mut steps = Steps { used: 0, limit: u64::MAX };
    reduce_counting(p, basis, &mut steps).expect("unbounded reduction")
}

fn s_poly<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
    let (lf, cf) = f.leading().expect("non-zero");
    let (lg, cg) = g.leading().expect("non-zero");
    let l = lf.lcm(lg);
    let a = f.mul_term(&lf.quotient(&l), &(F::one() / cf.clone()));
    let b = g.mul_term(&lg.quotient(&l), &(F::one() / cg.clone()));
    a.sub(&b)
}

/// The reduced Gröbner basis of the ideal generated by `gens`, sorted by
/// leading monomial. The unit ideal gives `[1]`.
pub fn groebner_basis<F: Field>(gens: &[Poly<F>], budget: u64) -> Result<Vec<Poly<F>>> {
    let mut steps = Steps { used: 0, limit: budget };
    let mut g: Vec<Poly<F>> = Vec::new();
    for p in gens {
        let r = reduce_counting(p, &g, &mut steps)?;
        if !r.is_zero() {
            g.push(r.monic());
        }
    }
    let mut lead: Vec<Mono> = g.iter().map(|p| p.leading().expect("non-zero").0.clone()).collect();
    // normal selection strategy: smallest lcm first
    let mut queue: BTreeSet<(Mono, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            queue.insert((lead[i].lcm(&lead[j]), i, j));
            pending.insert((i, j));
        }
    }
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    while let Some((l, i, j)) = queue.pop_first() {
        pending.remove(&(i, j));
        if lead[i].coprime(&lead[j]) {
            continue;
        }
        // chain criterion
        let chained = (0..g.len()).any(|m| {
            m != i && m != j && lead[m].divides(&l) && !pending.contains(&key(i, m)) && !pending.contains(&key(j, m))
        });
        if chained {
            continue;
        }
        steps.tick()?;
        let r = reduce_counting(&s_poly(&g[i], &g[j]), &g, &mut steps)?;
        if r.is_zero() {
            continue;
        }
        if r.as_constant().is_some() {
            return Ok(vec![Poly::one(r.nvars())]);
        }
        let r = r.monic();
        let n = g.len();
        lead.push(r.leading().expect("non-zero").0.clone());
        g.push(r);
        for m in 0..n {
            queue.insert((lead[m].lcm(&lead[n]), m, n));
            pending.insert((m, n));
        }
    }
    // minimize, then interreduce
    let mut min: Vec<Poly<F>> = Vec::new();
    for (k, p) in g.iter().enumerate() {
        let lp = p.leading().expect("non-zero").0;
        let redundant = g.iter().enumerate().any(|(m, q)| {
            let lq = q.leading().expect("non-zero").0;
            m != k && lq.divides(lp) && (lq != lp || m < k)
        });
        if !redundant {
            min.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(min.len());
    for k in 0..min.len() {
        let others: Vec<Poly<F>> = min.iter().enumerate().filter(|(m, _)| *m != k).map(|(_, q)| q.clone()).collect();
        out.push(reduce_counting(&min[k], &others, &mut steps)?.monic());
    }
    out.sort_by(|a, b| a.leading().expect("non-zero").0.cmp(b.leading().expect("non-zero").0));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::zariski::poly::parse_poly;

    fn p(s: &str, n: &[String]) -> Poly<Rational> {
        parse_poly(s, n).unwrap()
    }

    #[test]
    fn square_zero_consequence() {
        let n: Vec<String> = ["x", "dx"].iter().map(|s| s.to_string()).collect();
        let g = groebner_basis(&[p("x^2", &n), p("2*x*dx", &n), p("dx^2", &n)], DEFAULT_BUDGET).unwrap();
        assert!(normal_form(&p("x*dx", &n), &g).is_zero());
        assert!(!normal_form(&p("x", &n), &g).is_zero());
    }

    #[test]
    fn unit_ideal() {
        let n: Vec<String> = ["x"].iter().map(|s| s.to_string()).collect();
        let g = groebner_basis(&[p("x^2", &n), p("x^2 - 1", &n)], DEFAULT_BUDGET).unwrap();
        assert_eq!(g, vec![Poly::one(1)]);
    }

    #[test]
    fn budget_is_enforced() {
        let n: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let gens = [p("x + y + z", &n), p("x*y + y*z + z*x", &n), p("x*y*z - 1", &n)];
        assert!(matches!(groebner_basis(&gens, 3), Err(CatError::Budget(_))));
        assert!(groebner_basis(&gens, DEFAULT_BUDGET).is_ok());
    }
}
