//! Bracketings: full binary trees whose leaves are the positions `1..=n` in
//! order, i.e. the ways to parenthesize `x1 x2 … xn`.
//!
//! Leaf positions are implicit (the `i`-th leaf from the left is `xi`), so
//! enumerated bracketings can share subtrees.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groupoid::Groupoid;

/// Largest `n` accepted by [`catalan`].
pub const MAX_CATALAN_N: usize = 20;
/// Largest size accepted by [`enumerate_bracketings`].
pub const MAX_ENUM_SIZE: usize = 14;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bracketing(Arc<Node>);

#[derive(PartialEq, Eq, Hash)]
enum Node {
    Leaf,
    Pair {
        left: Bracketing,
        right: Bracketing,
        size: usize,
    },
}

impl Bracketing {
    pub fn leaf() -> Self {
        Bracketing(Arc::new(Node::Leaf))
    }

    pub fn pair(left: Bracketing, right: Bracketing) -> Self {
        let size = left.size() + right.size();
        Bracketing(Arc::new(Node::Pair { left, right, size }))
    }

    /// Number of leaves.
    pub fn size(&self) -> usize {
        match &*self.0 {
            Node::Leaf => 1,
            Node::Pair { size, .. } => *size,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(&*self.0, Node::Leaf)
    }

    /// Left and right factor, or `None` for a single leaf.
    pub fn factors(&self) -> Option<(&Bracketing, &Bracketing)> {
        match &*self.0 {
            Node::Leaf => None,
            Node::Pair { left, right, .. } => Some((left, right)),
        }
    }

    /// `(⋯((x1 x2) x3)⋯) xn`
    pub fn left_assoc(n: usize) -> Self {
        assert!(n >= 1, "a bracketing has at least one leaf");
        (1..n).fold(Self::leaf(), |acc, _| Self::pair(acc, Self::leaf()))
    }

    /// `x1 (x2 (⋯ (x(n−1) xn)⋯))`
    pub fn right_assoc(n: usize) -> Self {
        assert!(n >= 1, "a bracketing has at least one leaf");
        (1..n).fold(Self::leaf(), |acc, _| Self::pair(Self::leaf(), acc))
    }

    /// For each leaf in position order, the number of left-child edges on the
    /// path from the root.
    pub fn left_depths(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size());
        self.collect_depths(0, &mut out);
        out
    }

    fn collect_depths(&self, depth: usize, out: &mut Vec<usize>) {
        match self.factors() {
            None => out.push(depth),
            Some((l, r)) => {
                l.collect_depths(depth + 1, out);
                r.collect_depths(depth, out);
            }
        }
    }

    /// Sizes of the iterated left factors `|l(B)|, |l²(B)|, …` down to 1.
    pub fn left_factor_sizes(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self;
        while let Some((l, _)) = cur.factors() {
            out.push(l.size());
            cur = l;
        }
        out
    }

    /// Evaluates the bracketing on `g` with `args[i]` substituted for `x(i+1)`.
    pub fn evaluate(&self, g: &Groupoid, args: &[usize]) -> usize {
        assert_eq!(args.len(), self.size());
        self.eval_at(g, args)
    }

    fn eval_at(&self, g: &Groupoid, args: &[usize]) -> usize {
        match self.factors() {
            None => args[0],
            Some((l, r)) => {
                let k = l.size();
                g.mul(l.eval_at(g, &args[..k]), r.eval_at(g, &args[k..]))
            }
        }
    }

    /// Renders with leaves numbered from `first`.
    pub fn display_from(&self, first: usize) -> String {
        let mut out = String::new();
        self.write_from(first, &mut out);
        out
    }

    fn write_from(&self, first: usize, out: &mut String) {
        match self.factors() {
            None => {
                out.push('x');
                out.push_str(&first.to_string());
            }
            Some((l, r)) => {
                out.push('(');
                l.write_from(first, out);
                out.push(' ');
                r.write_from(first + l.size(), out);
                out.push(')');
            }
        }
    }
}

impl fmt::Display for Bracketing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_from(1))
    }
}

impl fmt::Debug for Bracketing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bracketing({self})")
    }
}

impl FromStr for Bracketing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_bracketing(s)
    }
}

/// `C(n−1) = binom(2n−2, n−1) / n`, the number of bracketings of size `n`.
pub fn catalan(n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::Invalid("bracketing size must be at least 1".into()));
    }
    if n > MAX_CATALAN_N {
        return Err(Error::guard("catalan size", MAX_CATALAN_N as u64, n as u64));
    }
    // binom(2m, m) / (m + 1) with m = n − 1, computed incrementally:
    // C(k+1) = C(k) · 2(2k+1) / (k+2)
    let mut c: u64 = 1;
    for k in 0..(n as u64 - 1) {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    Ok(c)
}

/// All bracketings of size `n`: split by left-factor size ascending, then
/// left factors in their own enumeration order, then right factors.
pub fn enumerate_bracketings(n: usize) -> Result<Vec<Bracketing>> {
    if n == 0 {
        return Err(Error::Invalid("bracketing size must be at least 1".into()));
    }
    if n > MAX_ENUM_SIZE {
        return Err(Error::guard(
            "bracketing enumeration size",
            MAX_ENUM_SIZE as u64,
            n as u64,
        ));
    }
    let mut by_size: Vec<Vec<Bracketing>> = vec![Vec::new(), vec![Bracketing::leaf()]];
    for m in 2..=n {
        let mut level = Vec::new();
        for k in 1..m {
            for l in &by_size[k] {
                for r in &by_size[m - k] {
                    level.push(Bracketing::pair(l.clone(), r.clone()));
                }
            }
        }
        by_size.push(level);
    }
    Ok(by_size.swap_remove(n))
}

/// Parses the `((x1 x2) x3)` notation. Leaves must be `x1 … xn` in order and
/// every product must be parenthesized.
pub fn parse_bracketing(text: &str) -> Result<Bracketing> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        next_leaf: 1,
    };
    let b = p.bracketing()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::syntax(p.pos, "trailing input"));
    }
    Ok(b)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    next_leaf: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn bracketing(&mut self) -> Result<Bracketing> {
        self.skip_ws();
        match self.src.get(self.pos) {
            None => Err(Error::syntax(self.pos, "unexpected end of input")),
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let l = self.bracketing()?;
                let r = self.bracketing()?;
                self.skip_ws();
                match self.src.get(self.pos) {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(Bracketing::pair(l, r))
                    }
                    Some(_) => Err(Error::syntax(self.pos, "expected `)`")),
                    None => Err(Error::syntax(open, "unbalanced parenthesis")),
                }
            }
            Some(b'x') => {
                let start = self.pos;
                self.pos += 1;
                let digits_start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[digits_start..self.pos]).unwrap();
                let k: usize = digits
                    .parse()
                    .map_err(|_| Error::syntax(start, "expected a leaf such as `x1`"))?;
                if k != self.next_leaf {
                    let msg = if k < self.next_leaf {
                        format!("repeated or out-of-order position x{k}")
                    } else {
                        format!(
                            "positions out of order: expected x{}, found x{k}",
                            self.next_leaf
                        )
                    };
                    return Err(Error::syntax(start, msg));
                }
                self.next_leaf += 1;
                Ok(Bracketing::leaf())
            }
            Some(b')') => Err(Error::syntax(self.pos, "unbalanced parenthesis")),
            Some(_) => Err(Error::syntax(self.pos, "unexpected character")),
        }
    }
}
