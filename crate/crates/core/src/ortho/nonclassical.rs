//! Second-order eigenoperators `(ax² + bx + c)D² + (ex + f)D + g` for an
//! orthogonal family, found as the null space of an exact linear system.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::OrthoFamily;
use crate::exact::{int, Rational, RationalPoly};

pub const UNKNOWNS: [&str; 6] = ["a", "b", "c", "e", "f", "g"];

/// How the eigenvalue of the ansatz on `pₙ` is written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenRule {
    /// `a n(n−1) + bn + c + en + f + g`, the form used in the hand proof.
    AsDisplayed,
    /// `a n(n−1) + en + g`, the diagonal of the operator on `xⁿ`.
    Property3,
}

impl EigenRule {
    fn gamma(self, n: i64) -> [Rational; 6] {
        let nn = int(n * (n - 1));
        match self {
            EigenRule::AsDisplayed => [nn, int(n), int(1), int(n), int(1), int(1)],
            EigenRule::Property3 => [nn, int(0), int(0), int(n), int(0), int(1)],
        }
    }
}

/// `Σ coeffs[i] · UNKNOWNS[i]`, understood as an equation `= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    pub coeffs: [Rational; 6],
}

impl LinearForm {
    pub fn new(coeffs: [Rational; 6]) -> Self {
        Self { coeffs }
    }

    /// Integer coefficients, `a..g` in order.
    pub fn from_ints(c: [i64; 6]) -> Self {
        Self::new(c.map(int))
    }

    pub fn unknown(i: usize) -> Self {
        let mut c: [Rational; 6] = Default::default();
        c[i] = Rational::one();
        Self::new(c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Scaled to coprime integers with a positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()) else {
            return self.clone();
        };
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let sign = if lead.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let scale = sign * gcd;
        Self::new(std::array::from_fn(|i| Rational::from_integer(&ints[i] / &scale)))
    }

    /// Drops the listed unknowns (sets them to zero).
    fn without(&self, vars: &[usize]) -> Self {
        let mut out = self.clone();
        for &v in vars {
            out.coeffs[v] = Rational::zero();
        }
        out
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in self.coeffs.iter().zip(UNKNOWNS) {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            if !mag.is_one() {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            f.write_str(name)?;
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(" = 0")
    }
}

impl Serialize for LinearForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Reduced row echelon form; returns the nonzero rows.
fn rref(rows: &[LinearForm]) -> Vec<LinearForm> {
    let mut m: Vec<[Rational; 6]> = rows.iter().map(|r| r.coeffs.clone()).collect();
    let mut rank = 0;
    for col in 0..6 {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = Rational::one() / &m[rank][col];
        for v in m[rank].iter_mut() {
            *v *= &inv;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[rank].clone();
                for (v, p) in m[r].iter_mut().zip(&pivot_row) {
                    *v -= &factor * p;
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m.into_iter().map(LinearForm::new).collect()
}

fn in_span(system: &[LinearForm], form: &LinearForm) -> bool {
    let base = rref(system).len();
    let mut extended = system.to_vec();
    extended.push(form.clone());
    rref(&extended).len() == base
}

fn forced_zero(system: &[LinearForm]) -> Vec<usize> {
    (0..6).filter(|&v| in_span(system, &LinearForm::unknown(v))).collect()
}

/// Coefficient equations contributed by one member `pₙ`.
fn equations_for(p: &RationalPoly, n: i64, rule: EigenRule) -> Vec<LinearForm> {
    let x = RationalPoly::var();
    let x2 = x.shift(1);
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let applied = [&x2 * &d2, &x * &d2, d2.clone(), &x * &d1, d1, p.clone()];
    let gamma = rule.gamma(n);
    let residuals: Vec<RationalPoly> = applied.iter().zip(&gamma).map(|(b, g)| b - &p.scale(g)).collect();
    let top = residuals.iter().filter_map(RationalPoly::degree).max();
    let mut out: Vec<LinearForm> = Vec::new();
    for k in 0..=top.unwrap_or(0) {
        let form = LinearForm::new(std::array::from_fn(|u| residuals[u].coeff(k)));
        if !form.is_zero() {
            let form = form.normalized();
            if !out.contains(&form) {
                out.push(form);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonclassicalStep {
    pub n: i64,
    /// One equation per power of `x`, normalized, duplicates removed.
    pub equations: Vec<LinearForm>,
    /// The same equations with every unknown already forced to zero by the
    /// earlier steps removed.
    pub reduced: Vec<LinearForm>,
    /// Rank and null-space dimension of the accumulated system.
    pub rank: usize,
    pub solution_dim: usize,
    /// Unknowns forced to zero after this step.
    pub forced_zero: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonclassicalWitness {
    pub family: OrthoFamily,
    pub rule: EigenRule,
    pub max_n: i64,
    pub unknowns: [&'static str; 6],
    pub steps: Vec<NonclassicalStep>,
    /// Reduced row echelon form of the full system.
    pub system: Vec<LinearForm>,
    pub solution_space_dim: usize,
    /// True when the only solutions are the constants (`g` free, rest zero).
    pub only_constants: bool,
}

impl NonclassicalWitness {
    /// Whether `form = 0` follows from the equations of steps `0..=n`.
    pub fn implies_by(&self, n: i64, form: &LinearForm) -> bool {
        let rows: Vec<LinearForm> = self
            .steps
            .iter()
            .filter(|s| s.n <= n)
            .flat_map(|s| s.equations.iter().cloned())
            .collect();
        in_span(&rows, form)
    }

    pub fn step(&self, n: i64) -> Option<&NonclassicalStep> {
        self.steps.iter().find(|s| s.n == n)
    }
}

/// Builds and solves the eigenoperator system for `p₀ ..= p_{max_n}`.
pub fn nonclassical_check(family: OrthoFamily, max_n: i64, rule: EigenRule) -> NonclassicalWitness {
    let max_n = max_n.max(0);
    let polys = family.polys(max_n as usize);
    let mut all: Vec<LinearForm> = Vec::new();
    let mut steps = Vec::new();
    for (n, p) in polys.iter().enumerate() {
        let n = n as i64;
        let prior_zero = forced_zero(&all);
        let equations = equations_for(p, n, rule);
        let mut reduced: Vec<LinearForm> = Vec::new();
        for e in &equations {
            let r = e.without(&prior_zero);
            if !r.is_zero() {
                let r = r.normalized();
                if !reduced.contains(&r) {
                    reduced.push(r);
                }
            }
        }
        all.extend(equations.iter().cloned());
        let rank = rref(&all).len();
        steps.push(NonclassicalStep {
            n,
            equations,
            reduced,
            rank,
            solution_dim: 6 - rank,
            forced_zero: forced_zero(&all).into_iter().map(|v| UNKNOWNS[v]).collect(),
        });
    }
    let system = rref(&all);
    let dim = 6 - system.len();
    let zero = forced_zero(&all);
    NonclassicalWitness {
        family,
        rule,
        max_n,
        unknowns: UNKNOWNS,
        steps,
        system,
        solution_space_dim: dim,
        only_constants: dim == 1 && zero == [0, 1, 2, 3, 4],
    }
}
