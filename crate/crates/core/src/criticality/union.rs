use serde::Serialize;

use crate::bounds::{
    beta_interval, clique_cover_number, cycle_cover_bound, fractional_clique_cover, BetaInterval,
};
use crate::confusion::{min_oneshot_bounds, verify_code, AlphabetSpec, CodeTable};
use crate::error::Result;
use crate::graph::{disjoint_union, mais, DiGraph};
use crate::limits::Limits;
use crate::linear::minrank_gf2;
use crate::scalar::{int, serde_rational};
use crate::Rational;

/// A metric on `g`, `h` and `g ∪ h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Additivity {
    pub metric: &'static str,
    #[serde(with = "serde_rational")]
    pub g: Rational,
    #[serde(with = "serde_rational")]
    pub h: Rational,
    #[serde(with = "serde_rational")]
    pub union: Rational,
}

impl Additivity {
    fn new(metric: &'static str, g: Rational, h: Rational, union: Rational) -> Self {
        Additivity {
            metric,
            g,
            h,
            union,
        }
    }

    pub fn additive(&self) -> bool {
        &self.g + &self.h == self.union
    }
}

/// Product of the two optimal-found codes, checked on the union.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OneshotProduct {
    pub g_symbols: usize,
    pub h_symbols: usize,
    pub union_lower: usize,
    pub product_code_valid: bool,
}

impl OneshotProduct {
    pub fn submultiplicative(&self) -> bool {
        self.product_code_valid && self.union_lower <= self.g_symbols * self.h_symbols
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnionReport {
    pub metrics: Vec<Additivity>,
    pub oneshot: Option<OneshotProduct>,
    pub beta_g: BetaInterval,
    pub beta_h: BetaInterval,
    pub beta_union: BetaInterval,
    /// Symmetric-rate interval `[r_lo, r_hi]` of the union composed as
    /// `r1 r2 / (r1 + r2)` from the parts' intervals.
    #[serde(with = "serde_rational::vec")]
    pub composed_rate: Vec<Rational>,
}

impl UnionReport {
    pub fn exact_claims_hold(&self) -> bool {
        self.metrics.iter().all(Additivity::additive)
            && self.oneshot.as_ref().map_or(true, OneshotProduct::submultiplicative)
    }

    pub fn metric(&self, name: &str) -> Option<&Additivity> {
        self.metrics.iter().find(|m| m.metric == name)
    }
}

/// `r1 r2 / (r1 + r2)` for rates given as reciprocals `b1`, `b2`.
fn compose(b1: &Rational, b2: &Rational) -> Rational {
    let sum = b1 + b2;
    if sum == int(0) {
        return int(0);
    }
    if b1 == &int(0) || b2 == &int(0) {
        return sum.recip();
    }
    let (r1, r2) = (b1.recip(), b2.recip());
    &r1 * &r2 / (&r1 + &r2)
}

fn oneshot_product(g: &DiGraph, h: &DiGraph, u: &DiGraph) -> Result<Option<OneshotProduct>> {
    let limits = Limits::default();
    let spec = |n: usize| AlphabetSpec::binary(n);
    if u.n() > 8 {
        return Ok(None);
    }
    let bg = min_oneshot_bounds(g, &spec(g.n()), &limits)?;
    let bh = min_oneshot_bounds(h, &spec(h.n()), &limits)?;
    let bu = min_oneshot_bounds(u, &spec(u.n()), &limits)?;
    let (sg, sh) = (spec(g.n()), spec(h.n()));
    let ng = g.n();
    let code = CodeTable::from_fn(u, &spec(u.n()), |w| {
        let a = bg.coloring[sg.rank(&w[..ng])];
        let b = bh.coloring[sh.rank(&w[ng..])];
        1 + a * bh.upper + b
    })?;
    Ok(Some(OneshotProduct {
        g_symbols: bg.upper,
        h_symbols: bh.upper,
        union_lower: bu.lower,
        product_code_valid: verify_code(&code).valid && code.n_symbols() <= bg.upper * bh.upper,
    }))
}

pub fn union_additivity_check(g: &DiGraph, h: &DiGraph) -> Result<UnionReport> {
    union_additivity_check_with(g, h, true)
}

/// As [`union_additivity_check`]; `oneshot` enables the product-code check
/// (still skipped above eight union vertices).
pub fn union_additivity_check_with(g: &DiGraph, h: &DiGraph, oneshot: bool) -> Result<UnionReport> {
    let u = disjoint_union(g, h);
    let each = |f: &dyn Fn(&DiGraph) -> Result<Rational>| -> Result<(Rational, Rational, Rational)> {
        Ok((f(g)?, f(h)?, f(&u)?))
    };
    let mut metrics = Vec::new();
    let table: [(&'static str, &dyn Fn(&DiGraph) -> Result<Rational>); 5] = [
        ("minrank_gf2", &|x| Ok(int(minrank_gf2(x)?.rank))),
        ("mais", &|x| Ok(int(mais(x)?.size))),
        ("clique_cover", &|x| Ok(int(clique_cover_number(x)?.0))),
        ("fractional_clique_cover", &|x| Ok(fractional_clique_cover(x)?.0)),
        ("cycle_cover", &|x| Ok(int(cycle_cover_bound(x)?.value))),
    ];
    for (name, f) in table {
        let (a, b, c) = each(f)?;
        metrics.push(Additivity::new(name, a, b, c));
    }
    let beta_g = beta_interval(g)?;
    let beta_h = beta_interval(h)?;
    let beta_union = beta_interval(&u)?;
    let composed_rate = vec![
        compose(&beta_g.upper, &beta_h.upper),
        compose(&beta_g.lower, &beta_h.lower),
    ];
    Ok(UnionReport {
        metrics,
        oneshot: if oneshot { oneshot_product(g, h, &u)? } else { None },
        beta_g,
        beta_h,
        beta_union,
        composed_rate,
    })
}
