//! The group-spec mini-language:
//! `cyclic(n; a=1, b=1)`, `klein(a=10, b=01)`, `perm(n; a=(0 1 2), b=(0 1))`,
//! `gaschutz(<spec>, p)`, `tilde(<spec>, p)`, `prodA(<spec>, <spec>)`.

use std::fmt;

use log::warn;

use super::{product_a, AGroup, FiniteGroup};
use crate::error::{Error, Result};
use crate::gaschuetz::GaschuetzLayer;
use crate::permgrp::Permutation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic { n: u64, assign: Vec<(usize, u64)> },
    Klein { assign: Vec<(usize, (u8, u8))> },
    Perm { degree: usize, assign: Vec<(usize, Permutation)> },
    Gaschutz(Box<GroupSpec>, u64),
    Tilde(Box<GroupSpec>, u64),
    ProdA(Box<GroupSpec>, Box<GroupSpec>),
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in `{}`", self.pos, self.text))
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a name"));
        }
        Ok(self.text[start..self.pos].to_string())
    }

    fn int(&mut self) -> Result<u64> {
        let t = self.ident()?;
        t.parse().map_err(|_| self.err(&format!("expected an integer, found `{t}`")))
    }

    fn letter(&mut self) -> Result<usize> {
        let t = self.ident()?;
        match t.as_bytes() {
            [c] if c.is_ascii_lowercase() => Ok((c - b'a') as usize),
            _ => Err(self.err(&format!("expected a letter, found `{t}`"))),
        }
    }

    /// `letter = value` items separated by commas, up to the closing parenthesis.
    fn assignments<T>(&mut self, mut value: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<(usize, T)>> {
        let mut out: Vec<(usize, T)> = Vec::new();
        loop {
            let l = self.letter()?;
            if out.iter().any(|(x, _)| *x == l) {
                return Err(self.err("letter assigned twice"));
            }
            self.eat(b'=')?;
            out.push((l, value(self)?));
            match self.peek() {
                Some(b',') => self.pos += 1,
                _ => return Ok(out),
            }
        }
    }

    fn cycles(&mut self) -> Result<String> {
        self.ws();
        let start = self.pos;
        while self.peek() == Some(b'(') {
            while self.pos < self.s.len() && self.s[self.pos] != b')' {
                self.pos += 1;
            }
            self.eat(b')')?;
        }
        Ok(self.text[start..self.pos].to_string())
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let name = self.ident()?;
        self.eat(b'(')?;
        let spec = match name.as_str() {
            "cyclic" => {
                let n = self.int()?;
                if n == 0 {
                    return Err(self.err("cyclic order must be positive"));
                }
                self.eat(b';')?;
                let assign = self.assignments(|c| c.int())?;
                GroupSpec::Cyclic { n, assign }
            }
            "klein" => {
                let assign = self.assignments(|c| {
                    let t = c.ident()?;
                    match t.as_bytes() {
                        [x @ (b'0' | b'1'), y @ (b'0' | b'1')] => Ok((x - b'0', y - b'0')),
                        _ => Err(c.err(&format!("expected two bits, found `{t}`"))),
                    }
                })?;
                GroupSpec::Klein { assign }
            }
            "perm" => {
                let degree = self.int()? as usize;
                self.eat(b';')?;
                let assign = self.assignments(|c| {
                    let t = c.cycles()?;
                    Permutation::parse(&t, degree)
                })?;
                GroupSpec::Perm { degree, assign }
            }
            "gaschutz" | "tilde" => {
                let inner = self.spec()?;
                self.eat(b',')?;
                let p = self.int()?;
                if name == "tilde" {
                    GroupSpec::Tilde(Box::new(inner), p)
                } else {
                    GroupSpec::Gaschutz(Box::new(inner), p)
                }
            }
            "prodA" | "proda" => {
                let x = self.spec()?;
                self.eat(b',')?;
                let y = self.spec()?;
                GroupSpec::ProdA(Box::new(x), Box::new(y))
            }
            other => return Err(Error::Parse(format!("unknown group constructor `{other}`"))),
        };
        self.eat(b')')?;
        Ok(spec)
    }
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let mut c = Cursor { s: text.as_bytes(), pos: 0, text };
        let spec = c.spec()?;
        if c.peek().is_some() {
            return Err(c.err("trailing input"));
        }
        Ok(spec)
    }

    /// Number of letters: largest assigned letter index plus one.
    pub fn alphabet_size(&self) -> usize {
        fn span<T>(a: &[(usize, T)]) -> usize {
            a.iter().map(|(l, _)| l + 1).max().unwrap_or(0)
        }
        match self {
            GroupSpec::Cyclic { assign, .. } => span(assign),
            GroupSpec::Klein { assign } => span(assign),
            GroupSpec::Perm { assign, .. } => span(assign),
            GroupSpec::Gaschutz(s, _) | GroupSpec::Tilde(s, _) => s.alphabet_size(),
            GroupSpec::ProdA(x, y) => x.alphabet_size().max(y.alphabet_size()),
        }
    }

    fn warn_unassigned<T>(&self, assign: &[(usize, T)]) {
        let k = self.alphabet_size();
        for l in 0..k {
            if !assign.iter().any(|(x, _)| *x == l) {
                warn!("letter {} is unassigned in `{self}` and maps to the identity", (b'a' + l as u8) as char);
            }
        }
    }

    /// Enumerate every element, including Gaschutz layers.
    pub fn materialize(&self, bound: usize) -> Result<FiniteGroup> {
        let k = self.alphabet_size();
        match self {
            GroupSpec::Cyclic { n, assign } => {
                self.warn_unassigned(assign);
                let mut r = vec![0u64; k];
                for &(l, x) in assign {
                    r[l] = x % n;
                }
                let (g, _) = FiniteGroup::from_bfs(k, 0u64, |&x, a| (x + r[a]) % n, bound)?;
                if (g.order() as u64) < *n {
                    return Err(Error::NonGenerating { reached: g.order(), expected: *n as usize });
                }
                Ok(g)
            }
            GroupSpec::Klein { assign } => {
                self.warn_unassigned(assign);
                let mut r = vec![(0u8, 0u8); k];
                for &(l, x) in assign {
                    r[l] = x;
                }
                let (g, _) = FiniteGroup::from_bfs(k, (0u8, 0u8), |&(x, y), a| (x ^ r[a].0, y ^ r[a].1), bound)?;
                if g.order() < 4 {
                    return Err(Error::NonGenerating { reached: g.order(), expected: 4 });
                }
                Ok(g)
            }
            GroupSpec::Perm { degree, assign } => {
                self.warn_unassigned(assign);
                let mut r = vec![Permutation::identity(*degree); k];
                for (l, p) in assign {
                    r[*l] = p.clone();
                }
                Ok(FiniteGroup::from_bfs(k, Permutation::identity(*degree), |x, a| x.then(&r[a]), bound)?.0)
            }
            GroupSpec::Gaschutz(inner, p) | GroupSpec::Tilde(inner, p) => {
                let base = inner.materialize(bound)?;
                let layer = GaschuetzLayer::new(base, *p, matches!(self, GroupSpec::Tilde(..)))?;
                Ok(layer.materialize(bound)?.0)
            }
            GroupSpec::ProdA(x, y) => {
                let (gx, gy) = (x.materialize(bound)?, y.materialize(bound)?);
                Ok(product_a(&gx, &gy, bound)?.0)
            }
        }
    }

    /// Like [`GroupSpec::materialize`], except that an outermost Gaschutz layer stays lazy.
    pub fn realize(&self, bound: usize) -> Result<AGroup> {
        match self {
            GroupSpec::Gaschutz(inner, p) | GroupSpec::Tilde(inner, p) => {
                let base = inner.materialize(bound)?;
                let layer = GaschuetzLayer::new(base, *p, matches!(self, GroupSpec::Tilde(..)))?;
                Ok(AGroup::Lazy(Box::new(layer)))
            }
            _ => Ok(AGroup::Materialized(self.materialize(bound)?)),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn letters<T>(f: &mut fmt::Formatter<'_>, a: &[(usize, T)], show: impl Fn(&T) -> String) -> fmt::Result {
            let items: Vec<String> =
                a.iter().map(|(l, x)| format!("{}={}", (b'a' + *l as u8) as char, show(x))).collect();
            write!(f, "{}", items.join(", "))
        }
        match self {
            GroupSpec::Cyclic { n, assign } => {
                write!(f, "cyclic({n}; ")?;
                letters(f, assign, |x| x.to_string())?;
                write!(f, ")")
            }
            GroupSpec::Klein { assign } => {
                write!(f, "klein(")?;
                letters(f, assign, |(x, y)| format!("{x}{y}"))?;
                write!(f, ")")
            }
            GroupSpec::Perm { degree, assign } => {
                write!(f, "perm({degree}; ")?;
                letters(f, assign, |p| p.to_string())?;
                write!(f, ")")
            }
            GroupSpec::Gaschutz(s, p) => write!(f, "gaschutz({s}, {p})"),
            GroupSpec::Tilde(s, p) => write!(f, "tilde({s}, {p})"),
            GroupSpec::ProdA(x, y) => write!(f, "prodA({x}, {y})"),
        }
    }
}
