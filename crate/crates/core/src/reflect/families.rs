//! Text format for piecewise-described weight families:
//!
//! ```text
//! dep w1 = 23/504000 - 4288512*w2/823543 - ...
//! region 1
//! w4 = 0
//! w2 in [0, 12588443/1449551462400]
//! w3 in [0, (44118375 - 4976640000000*w2)/36053104984064)
//! ```
//!
//! Parameters are listed in nesting order; later bounds may use earlier
//! parameters. `#` starts a comment. Dependent weights (`dep`) are evaluated
//! after the region's own lines.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::exactnum::{parse_rational, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Expr {
    Num(Rational),
    Var(String),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(c as char, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Bin(c as char, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(invalid("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let t = core::str::from_utf8(&self.s[start..self.pos]).unwrap();
                Ok(Expr::Num(parse_rational(t).ok_or_else(|| invalid("bad number"))?))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                Ok(Expr::Var(core::str::from_utf8(&self.s[start..self.pos]).unwrap().to_string()))
            }
            _ => Err(invalid("unexpected token in expression")),
        }
    }
}

fn parse_expr(s: &str) -> Result<Expr> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(invalid(alloc::format!("trailing input in `{s}`")));
    }
    Ok(e)
}

type Env = BTreeMap<String, Rational>;

fn eval(e: &Expr, env: &Env) -> Result<Rational> {
    Ok(match e {
        Expr::Num(q) => q.clone(),
        Expr::Var(v) => env.get(v).cloned().ok_or_else(|| invalid(alloc::format!("unbound `{v}`")))?,
        Expr::Neg(x) => -eval(x, env)?,
        Expr::Bin(op, a, b) => {
            let (a, b) = (eval(a, env)?, eval(b, env)?);
            match op {
                '+' => a + b,
                '-' => a - b,
                '*' => a * b,
                _ => {
                    if b.is_zero() {
                        return Err(crate::error::Error::DivisionByZero);
                    }
                    a / b
                }
            }
        }
    })
}

#[derive(Clone, Debug, PartialEq)]
enum Line {
    Eq(String, Expr),
    In { name: String, lo: Expr, hi: Expr, lo_closed: bool, hi_closed: bool },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    pub name: String,
    lines: Vec<Line>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParametricFamily {
    deps: Vec<(String, Expr)>,
    pub regions: Vec<Region>,
}

/// Index of `wN` (1-based in text, 0-based here).
fn weight_index(name: &str) -> Option<usize> {
    name.strip_prefix('w')?.parse::<usize>().ok()?.checked_sub(1)
}

impl ParametricFamily {
    pub fn parse(text: &str) -> Result<Self> {
        let mut deps = Vec::new();
        let mut regions: Vec<Region> = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("dep ") {
                let (n, e) = rest.split_once('=').ok_or_else(|| invalid(alloc::format!("bad dep line `{line}`")))?;
                deps.push((n.trim().to_string(), parse_expr(e)?));
            } else if let Some(rest) = line.strip_prefix("region") {
                regions.push(Region { name: rest.trim().to_string(), lines: Vec::new() });
            } else {
                let region = regions.last_mut().ok_or_else(|| invalid("bound outside a region"))?;
                region.lines.push(parse_line(line)?);
            }
        }
        Ok(ParametricFamily { deps, regions })
    }

    /// Weights w₁..w_n of a region with each interval parameter placed at
    /// lo + frac·(hi − lo). Fails if an interval is empty.
    pub fn sample(&self, region: &Region, frac: &Rational, n: usize) -> Result<Vec<Rational>> {
        let mut env = Env::new();
        for l in &region.lines {
            match l {
                Line::Eq(name, e) => {
                    let v = eval(e, &env)?;
                    env.insert(name.clone(), v);
                }
                Line::In { name, lo, hi, lo_closed, hi_closed } => {
                    let (a, b) = (eval(lo, &env)?, eval(hi, &env)?);
                    if a > b || (a == b && !(*lo_closed && *hi_closed)) {
                        return Err(invalid(alloc::format!("region {}: empty range for {name}", region.name)));
                    }
                    env.insert(name.clone(), &a + (b - &a) * frac);
                }
            }
        }
        self.finish(env, n)
    }

    /// Evaluates the dependent weights at explicit parameter values (no
    /// range checks); used for comparing parameterizations.
    pub fn at(&self, params: &[(&str, Rational)], n: usize) -> Result<Vec<Rational>> {
        let env: Env = params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        self.finish(env, n)
    }

    /// Free parameters named by the first region, in nesting order.
    pub fn parameters(&self) -> Vec<String> {
        self.regions
            .first()
            .map(|r| r.lines.iter().filter_map(|l| if let Line::In { name, .. } = l { Some(name.clone()) } else { None }).collect())
            .unwrap_or_default()
    }

    /// Weights the first region pins down itself (bounded or set), i.e. the
    /// parameters of the family's affine map.
    pub fn free_weights(&self) -> Vec<String> {
        let deps: Vec<&String> = self.deps.iter().map(|(n, _)| n).collect();
        self.regions
            .first()
            .map(|r| {
                r.lines
                    .iter()
                    .map(|l| match l {
                        Line::Eq(n, _) | Line::In { name: n, .. } => n.clone(),
                    })
                    .filter(|n| !deps.contains(&n))
                    .collect()
            })
            .unwrap_or_default()
    }

    fn finish(&self, mut env: Env, n: usize) -> Result<Vec<Rational>> {
        for (name, e) in &self.deps {
            if !env.contains_key(name) {
                let v = eval(e, &env)?;
                env.insert(name.clone(), v);
            }
        }
        let mut w = alloc::vec![Rational::zero(); n];
        for (k, v) in env {
            if let Some(i) = weight_index(&k) {
                if i < n {
                    w[i] = v;
                }
            }
        }
        Ok(w)
    }
}

fn parse_line(line: &str) -> Result<Line> {
    let bad = || invalid(alloc::format!("bad region line `{line}`"));
    if let Some((name, rest)) = line.split_once(" in ") {
        let rest = rest.trim();
        let lo_closed = match rest.chars().next() {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(bad()),
        };
        let hi_closed = match rest.chars().last() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(bad()),
        };
        let inner = &rest[1..rest.len() - 1];
        // split at the top-level comma
        let mut depth = 0i32;
        let mut cut = None;
        for (i, c) in inner.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => cut = Some(i),
                _ => {}
            }
        }
        let cut = cut.ok_or_else(bad)?;
        return Ok(Line::In {
            name: name.trim().to_string(),
            lo: parse_expr(&inner[..cut])?,
            hi: parse_expr(&inner[cut + 1..])?,
            lo_closed,
            hi_closed,
        });
    }
    let (name, e) = line.split_once('=').ok_or_else(bad)?;
    Ok(Line::Eq(name.trim().to_string(), parse_expr(e)?))
}

/// The two interior sampling fractions used throughout.
pub fn default_fractions() -> [Rational; 2] {
    let third = Rational::new(1.into(), 3.into());
    [third.clone(), Rational::one() - third]
}
