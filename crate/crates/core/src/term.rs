//! Groupoid terms with repeated variables, identities, and exhaustive
//! identity checking over finite groupoids.
//!
//! Grammar:
//!
//! ```text
//! term     := var | '(' term term ')'
//! var      := [a-z][a-z0-9]*
//! identity := term '=' term
//! ```

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bracketing::Bracketing;
use crate::error::{Error, Result};
use crate::groupoid::{Elem, Groupoid};
use crate::optable::{checked_pow, OpTable, MAX_ARITY};

/// Most distinct variables an identity may have for exhaustive checking.
pub const MAX_CHECK_VARS: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Node {
    Var(usize),
    App(Box<Node>, Box<Node>),
}

impl Node {
    fn eval(&self, g: &Groupoid, env: &[usize]) -> usize {
        match self {
            Node::Var(v) => env[*v],
            Node::App(l, r) => g.mul(l.eval(g, env), r.eval(g, env)),
        }
    }

    fn compile(&self, out: &mut Vec<Instr>) {
        match self {
            Node::Var(v) => out.push(Instr::Load(*v as u8)),
            Node::App(l, r) => {
                l.compile(out);
                r.compile(out);
                out.push(Instr::Mul);
            }
        }
    }

    fn remap(&self, map: &[usize]) -> Node {
        match self {
            Node::Var(v) => Node::Var(map[*v]),
            Node::App(l, r) => Node::App(Box::new(l.remap(map)), Box::new(r.remap(map))),
        }
    }

    fn write(&self, vars: &[String], compact: bool, out: &mut String) {
        match self {
            Node::Var(v) => out.push_str(&vars[*v]),
            Node::App(l, r) if compact => {
                for side in [l, r] {
                    if matches!(**side, Node::Var(_)) {
                        side.write(vars, true, out);
                    } else {
                        out.push('(');
                        side.write(vars, true, out);
                        out.push(')');
                    }
                }
            }
            Node::App(l, r) => {
                out.push('(');
                l.write(vars, false, out);
                out.push(' ');
                r.write(vars, false, out);
                out.push(')');
            }
        }
    }

    fn depth(&self) -> usize {
        match self {
            Node::Var(_) => 0,
            Node::App(l, r) => 1 + l.depth().max(r.depth()),
        }
    }
}

/// A groupoid term. Variables are numbered by first occurrence.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term {
    root: Node,
    vars: Vec<String>,
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term {
            root: Node::Var(0),
            vars: vec![name.to_owned()],
        }
    }

    /// The product `left · right`.
    pub fn app(left: Term, right: Term) -> Self {
        let mut vars = left.vars.clone();
        let map: Vec<usize> = right
            .vars
            .iter()
            .map(|v| match vars.iter().position(|w| w == v) {
                Some(i) => i,
                None => {
                    vars.push(v.clone());
                    vars.len() - 1
                }
            })
            .collect();
        Term {
            root: Node::App(Box::new(left.root), Box::new(right.root.remap(&map))),
            vars,
        }
    }

    /// The bracketing with `x{first}`, `x{first+1}`, … at its leaves.
    pub fn from_bracketing(b: &Bracketing, first: usize) -> Self {
        fn build(b: &Bracketing, next: &mut usize) -> Node {
            match b.factors() {
                None => {
                    *next += 1;
                    Node::Var(*next - 1)
                }
                Some((l, r)) => Node::App(Box::new(build(l, next)), Box::new(build(r, next))),
            }
        }
        let mut next = 0;
        let root = build(b, &mut next);
        Term {
            root,
            vars: (first..first + b.size()).map(|i| format!("x{i}")).collect(),
        }
    }

    /// Distinct variables in order of first occurrence.
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_var(&self) -> bool {
        matches!(self.root, Node::Var(_))
    }

    pub fn depth(&self) -> usize {
        self.root.depth()
    }

    /// Evaluates the term with `assignment[i]` bound to `vars()[i]`.
    pub fn evaluate(&self, g: &Groupoid, assignment: &[usize]) -> Result<usize> {
        if assignment.len() < self.vars.len() {
            return Err(Error::UnboundVariable(self.vars[assignment.len()].clone()));
        }
        if let Some(&bad) = assignment.iter().find(|&&a| a >= g.order()) {
            return Err(Error::ElementOutOfRange {
                index: bad,
                order: g.order(),
            });
        }
        Ok(self.root.eval(g, assignment))
    }

    /// Evaluates with variables bound by name.
    pub fn evaluate_named(&self, g: &Groupoid, bindings: &[(&str, usize)]) -> Result<usize> {
        let env = self
            .vars
            .iter()
            .map(|v| {
                bindings
                    .iter()
                    .find(|(name, _)| name == v)
                    .map(|&(_, e)| e)
                    .ok_or_else(|| Error::UnboundVariable(v.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.evaluate(g, &env)
    }

    /// The term function on `g`, with arguments in `vars()` order.
    pub fn term_function(&self, g: &Groupoid) -> Result<OpTable> {
        let k = self.vars.len();
        if k > MAX_ARITY {
            return Err(Error::guard("term arity", MAX_ARITY as u64, k as u64));
        }
        let n = g.order();
        let len =
            checked_pow(n, k).ok_or_else(|| Error::guard("term table size", u64::MAX, u64::MAX))?;
        let prog = Program::new(&self.root);
        let mut args = vec![0usize; k];
        let mut entries = Vec::with_capacity(len);
        for t in 0..len {
            let mut rest = t;
            for slot in args.iter_mut().rev() {
                *slot = rest % n;
                rest /= n;
            }
            entries.push(prog.run(g.table(), n, &args) as Elem);
        }
        Ok(OpTable::from_parts_unchecked(k, n, entries))
    }

    /// Juxtaposition form with parentheses only around compound factors,
    /// e.g. `(xy)x`. Unambiguous for single-letter variables.
    pub fn compact(&self) -> String {
        let mut out = String::new();
        self.root.write(&self.vars, true, &mut out);
        out
    }

    /// Renames variables positionally; `names` must be distinct.
    pub fn with_var_names(&self, names: &[String]) -> Self {
        assert_eq!(names.len(), self.vars.len());
        Term {
            root: self.root.clone(),
            vars: names.to_vec(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.root.write(&self.vars, false, &mut out);
        f.write_str(&out)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({self})")
    }
}

impl FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_term(s)
    }
}

/// An identity `lhs ≈ rhs`. Variables are shared between the two sides and
/// numbered by first occurrence, left side first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Identity {
    lhs: Node,
    rhs: Node,
    vars: Vec<String>,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        let mut vars = lhs.vars.clone();
        let map: Vec<usize> = rhs
            .vars
            .iter()
            .map(|v| match vars.iter().position(|w| w == v) {
                Some(i) => i,
                None => {
                    vars.push(v.clone());
                    vars.len() - 1
                }
            })
            .collect();
        Identity {
            lhs: lhs.root,
            rhs: rhs.root.remap(&map),
            vars,
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn lhs(&self) -> Term {
        side_term(&self.lhs, &self.vars)
    }

    pub fn rhs(&self) -> Term {
        side_term(&self.rhs, &self.vars)
    }

    /// True when at least one side is a bare variable (`t ≈ x`).
    pub fn is_absorption(&self) -> bool {
        matches!(self.lhs, Node::Var(_)) || matches!(self.rhs, Node::Var(_))
    }

    /// Exhaustively checks the identity on `g`. Returns the lexicographically
    /// first failing assignment (in `vars()` order), or `None` if it holds.
    pub fn counterexample(&self, g: &Groupoid) -> Result<Option<Vec<usize>>> {
        let compiled = CompiledIdentity::new(self)?;
        Ok(compiled.first_failure(g.table(), g.order()))
    }

    pub fn holds_in(&self, g: &Groupoid) -> Result<bool> {
        Ok(self.counterexample(g)?.is_none())
    }

    /// Whether a particular assignment satisfies the identity.
    pub fn holds_at(&self, g: &Groupoid, assignment: &[usize]) -> Result<bool> {
        Ok(self
            .lhs()
            .evaluate(g, &assignment[..self.lhs().vars().len()])?
            == evaluate_side(&self.rhs, g, assignment)?)
    }

    /// Substitutes the identity into the dual signature: `t ≈ s` becomes
    /// `tᵈ ≈ sᵈ`, mirroring every product. `g ⊨ dual(id)` iff `dual(g) ⊨ id`.
    pub fn mirrored(&self) -> Identity {
        fn mirror(n: &Node) -> Node {
            match n {
                Node::Var(v) => Node::Var(*v),
                Node::App(l, r) => Node::App(Box::new(mirror(r)), Box::new(mirror(l))),
            }
        }
        Identity {
            lhs: mirror(&self.lhs),
            rhs: mirror(&self.rhs),
            vars: self.vars.clone(),
        }
    }
}

fn side_term(node: &Node, vars: &[String]) -> Term {
    // Renumber by first occurrence within this side alone.
    fn collect(n: &Node, seen: &mut Vec<usize>) {
        match n {
            Node::Var(v) => {
                if !seen.contains(v) {
                    seen.push(*v);
                }
            }
            Node::App(l, r) => {
                collect(l, seen);
                collect(r, seen);
            }
        }
    }
    let mut order = Vec::new();
    collect(node, &mut order);
    let mut map = vec![usize::MAX; vars.len()];
    for (new, &old) in order.iter().enumerate() {
        map[old] = new;
    }
    Term {
        root: node.remap(&map),
        vars: order.iter().map(|&v| vars[v].clone()).collect(),
    }
}

fn evaluate_side(node: &Node, g: &Groupoid, assignment: &[usize]) -> Result<usize> {
    if let Some(&bad) = assignment.iter().find(|&&a| a >= g.order()) {
        return Err(Error::ElementOutOfRange {
            index: bad,
            order: g.order(),
        });
    }
    Ok(node.eval(g, assignment))
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = String::new();
        let mut r = String::new();
        self.lhs.write(&self.vars, false, &mut l);
        self.rhs.write(&self.vars, false, &mut r);
        write!(f, "{l} = {r}")
    }
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Identity({self})")
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_identity(s)
    }
}

#[derive(Clone, Copy, Debug)]
enum Instr {
    Load(u8),
    Mul,
}

/// Postfix program for fast repeated evaluation.
#[derive(Clone, Debug)]
struct Program {
    code: Vec<Instr>,
    stack_depth: usize,
}

impl Program {
    fn new(root: &Node) -> Self {
        let mut code = Vec::new();
        root.compile(&mut code);
        let (mut depth, mut max) = (0usize, 0usize);
        for i in &code {
            match i {
                Instr::Load(_) => {
                    depth += 1;
                    max = max.max(depth);
                }
                Instr::Mul => depth -= 1,
            }
        }
        Program {
            code,
            stack_depth: max,
        }
    }

    #[inline]
    fn run(&self, table: &[Elem], n: usize, env: &[usize]) -> usize {
        let mut stack = [0usize; 64];
        if self.stack_depth > stack.len() {
            return self.run_heap(table, n, env);
        }
        let mut sp = 0;
        for instr in &self.code {
            match *instr {
                Instr::Load(v) => {
                    stack[sp] = env[v as usize];
                    sp += 1;
                }
                Instr::Mul => {
                    sp -= 1;
                    stack[sp - 1] = table[stack[sp - 1] * n + stack[sp]] as usize;
                }
            }
        }
        stack[0]
    }

    fn run_heap(&self, table: &[Elem], n: usize, env: &[usize]) -> usize {
        let mut stack = Vec::with_capacity(self.stack_depth);
        for instr in &self.code {
            match *instr {
                Instr::Load(v) => stack.push(env[v as usize]),
                Instr::Mul => {
                    let r = stack.pop().unwrap();
                    let l = stack.pop().unwrap();
                    stack.push(table[l * n + r] as usize);
                }
            }
        }
        stack[0]
    }
}

/// An identity compiled for repeated checking against raw tables.
#[derive(Clone, Debug)]
pub struct CompiledIdentity {
    lhs: Program,
    rhs: Program,
    arity: usize,
}

impl CompiledIdentity {
    pub fn new(id: &Identity) -> Result<Self> {
        if id.vars.len() > MAX_CHECK_VARS {
            return Err(Error::guard(
                "identity variable count",
                MAX_CHECK_VARS as u64,
                id.vars.len() as u64,
            ));
        }
        Ok(CompiledIdentity {
            lhs: Program::new(&id.lhs),
            rhs: Program::new(&id.rhs),
            arity: id.vars.len(),
        })
    }

    /// Lexicographically first failing assignment on the row-major `table`
    /// of order `n`.
    pub fn first_failure(&self, table: &[Elem], n: usize) -> Option<Vec<usize>> {
        let k = self.arity;
        let mut env = vec![0usize; k];
        loop {
            if self.lhs.run(table, n, &env) != self.rhs.run(table, n, &env) {
                return Some(env);
            }
            let mut pos = k;
            loop {
                if pos == 0 {
                    return None;
                }
                pos -= 1;
                env[pos] += 1;
                if env[pos] < n {
                    break;
                }
                env[pos] = 0;
            }
        }
    }

    #[inline]
    pub fn holds(&self, table: &[Elem], n: usize) -> bool {
        self.first_failure(table, n).is_none()
    }
}

/// Exhaustive check: `Ok(None)` when `g ⊨ id`, otherwise the first failing
/// assignment in lexicographic order.
pub fn satisfies_identity(g: &Groupoid, id: &Identity) -> Result<Option<Vec<usize>>> {
    id.counterexample(g)
}

/// Families of bracketing identities used by the associativity theorems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// left-associated product ≈ right-associated product
    LeftEqRight,
    /// `x0 · L ≈ x0 · R` together with `L · x0 ≈ R · x0`
    PrefixedPair,
    /// left-associated product ≈ `x1 ·` left-associated product of `x2 … xn`
    Nulla,
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left_eq_right" => Ok(Scheme::LeftEqRight),
            "prefixed_pair" => Ok(Scheme::PrefixedPair),
            "nulla" => Ok(Scheme::Nulla),
            _ => Err(Error::Invalid(format!(
                "unknown scheme `{s}` (expected left_eq_right, prefixed_pair or nulla)"
            ))),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::LeftEqRight => "left_eq_right",
            Scheme::PrefixedPair => "prefixed_pair",
            Scheme::Nulla => "nulla",
        })
    }
}

/// Builds the scheme's identities over `x1 … xn` (and `x0` for the pair).
pub fn scheme_identity(scheme: Scheme, n: usize) -> Result<Vec<Identity>> {
    if n < 3 {
        return Err(Error::Invalid(format!(
            "scheme identities need n ≥ 3, got {n}"
        )));
    }
    let left = Term::from_bracketing(&Bracketing::left_assoc(n), 1);
    Ok(match scheme {
        Scheme::LeftEqRight => {
            let right = Term::from_bracketing(&Bracketing::right_assoc(n), 1);
            vec![Identity::new(left, right)]
        }
        Scheme::PrefixedPair => {
            let right = Term::from_bracketing(&Bracketing::right_assoc(n), 1);
            let x0 = Term::var("x0");
            vec![
                Identity::new(
                    Term::app(x0.clone(), left.clone()),
                    Term::app(x0.clone(), right.clone()),
                ),
                Identity::new(Term::app(left, x0.clone()), Term::app(right, x0)),
            ]
        }
        Scheme::Nulla => {
            let tail = Term::from_bracketing(&Bracketing::left_assoc(n - 1), 2);
            vec![Identity::new(left, Term::app(Term::var("x1"), tail))]
        }
    })
}

pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = TermParser::new(text);
    let node = p.term()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::syntax(p.pos, "trailing input after term"));
    }
    Ok(Term {
        root: node,
        vars: p.vars,
    })
}

pub fn parse_identity(text: &str) -> Result<Identity> {
    let mut p = TermParser::new(text);
    let lhs = p.term()?;
    p.skip_ws();
    if p.peek() != Some(b'=') {
        return Err(Error::syntax(p.pos, "expected `=`"));
    }
    p.pos += 1;
    let rhs = p.term()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::syntax(p.pos, "trailing input after identity"));
    }
    Ok(Identity {
        lhs,
        rhs,
        vars: p.vars,
    })
}

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: Vec<String>,
}

impl<'a> TermParser<'a> {
    fn new(text: &'a str) -> Self {
        TermParser {
            src: text.as_bytes(),
            pos: 0,
            vars: Vec::new(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Node> {
        self.skip_ws();
        match self.peek() {
            None => Err(Error::syntax(self.pos, "unexpected end of input")),
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let l = self.term()?;
                let r = self.term()?;
                self.skip_ws();
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(Node::App(Box::new(l), Box::new(r)))
                    }
                    None => Err(Error::syntax(open, "unbalanced parenthesis")),
                    Some(_) => Err(Error::syntax(self.pos, "expected `)`")),
                }
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_lowercase() || c.is_ascii_digit())
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let idx = match self.vars.iter().position(|v| v == name) {
                    Some(i) => i,
                    None => {
                        self.vars.push(name.to_owned());
                        self.vars.len() - 1
                    }
                };
                Ok(Node::Var(idx))
            }
            Some(b')') => Err(Error::syntax(self.pos, "unbalanced parenthesis")),
            Some(_) => Err(Error::syntax(self.pos, "unexpected character")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const G1: &str = "a b c e f
a a c f f
b b e e e
c c c c c
e e e e e
f f f f f
";

    fn g1() -> Groupoid {
        Groupoid::parse_gpd(G1).unwrap()
    }

    #[test]
    fn parses_identities() {
        let id = parse_identity("(x (x y)) = (x y)").unwrap();
        assert_eq!(id.vars(), ["x", "y"]);
        assert_eq!(id.to_string(), "(x (x y)) = (x y)");
        let refl = parse_identity("x = x").unwrap();
        assert_eq!(refl.vars(), ["x"]);
        let err = parse_identity("((x y) z").unwrap_err();
        assert!(err.to_string().contains("unbalanced parenthesis"), "{err}");
        assert!(parse_identity("(x y) (y x)").is_err());
        assert!(parse_term("(X y)").is_err());
        assert!(parse_term("(x y z)").is_err());
        assert_eq!(parse_term("(x1 (y2 x1))").unwrap().vars(), ["x1", "y2"]);
    }

    #[test]
    fn evaluates_on_g1() {
        let g = g1();
        let (a, b, c) = (0, 1, 2);
        let left = parse_term("((x y) z)").unwrap();
        let right = parse_term("(x (y z))").unwrap();
        assert_eq!(g.name(left.evaluate(&g, &[a, b, c]).unwrap()), "c");
        assert_eq!(g.name(right.evaluate(&g, &[a, b, c]).unwrap()), "f");
        assert_eq!(parse_term("x").unwrap().evaluate(&g, &[a]).unwrap(), a);
        assert_eq!(
            left.evaluate(&g, &[a, b]),
            Err(Error::UnboundVariable("z".into()))
        );
        assert_eq!(
            right
                .evaluate_named(&g, &[("z", c), ("y", b), ("x", a)])
                .unwrap(),
            4
        );
    }

    #[test]
    fn exhaustive_checks() {
        let g = g1();
        assert_eq!(
            satisfies_identity(&g, &parse_identity("(x (x y)) = (x y)").unwrap()).unwrap(),
            None
        );
        let b1b2 = parse_identity("(x (y (z u))) = (x ((y z) u))").unwrap();
        assert_eq!(
            satisfies_identity(&g, &b1b2).unwrap(),
            Some(vec![0, 0, 1, 2])
        );
        assert_eq!(
            satisfies_identity(&g, &parse_identity("x = x").unwrap()).unwrap(),
            None
        );
        let nine = parse_identity("(((a b) (c d)) ((e f) ((g h) i))) = a").unwrap();
        assert!(matches!(
            satisfies_identity(&g, &nine),
            Err(Error::Guard { .. })
        ));
    }

    #[test]
    fn counterexample_is_lexicographically_first() {
        let g = g1();
        let id = parse_identity("((x y) z) = (x (y z))").unwrap();
        let first = id.counterexample(&g).unwrap().unwrap();
        // brute force over all assignments in the same order
        let n = g.order();
        let mut brute = None;
        'outer: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if !id.holds_at(&g, &[x, y, z]).unwrap() {
                        brute = Some(vec![x, y, z]);
                        break 'outer;
                    }
                }
            }
        }
        assert_eq!(Some(first), brute);
    }

    #[test]
    fn schemes() {
        let s = |k, n| -> Vec<String> {
            scheme_identity(k, n)
                .unwrap()
                .iter()
                .map(|i| i.to_string())
                .collect()
        };
        assert_eq!(s(Scheme::LeftEqRight, 3), ["((x1 x2) x3) = (x1 (x2 x3))"]);
        assert_eq!(
            s(Scheme::Nulla, 4),
            ["(((x1 x2) x3) x4) = (x1 ((x2 x3) x4))"]
        );
        assert_eq!(
            s(Scheme::PrefixedPair, 3),
            [
                "(x0 ((x1 x2) x3)) = (x0 (x1 (x2 x3)))",
                "(((x1 x2) x3) x0) = ((x1 (x2 x3)) x0)"
            ]
        );
        assert!(scheme_identity(Scheme::Nulla, 2).is_err());
        assert_eq!("nulla".parse::<Scheme>().unwrap(), Scheme::Nulla);
    }

    #[test]
    fn absorption() {
        assert!(parse_identity("(x (x y)) = x").unwrap().is_absorption());
        assert!(parse_identity("x = x").unwrap().is_absorption());
        assert!(parse_identity("x = (x (y x))").unwrap().is_absorption());
        assert!(!parse_identity("(x y) = (y x)").unwrap().is_absorption());
    }

    #[test]
    fn sides_and_mirror() {
        let id = parse_identity("(x (y z)) = (y x)").unwrap();
        assert_eq!(id.rhs().vars(), ["y", "x"]);
        assert_eq!(id.rhs().to_string(), "(y x)");
        assert_eq!(id.mirrored().to_string(), "((z y) x) = (x y)");
        let g = g1();
        assert_eq!(
            id.mirrored().holds_in(&g).unwrap(),
            id.holds_in(&g.dual()).unwrap()
        );
    }

    #[test]
    fn compact_names() {
        assert_eq!(parse_term("((x y) x)").unwrap().compact(), "(xy)x");
        assert_eq!(parse_term("(x (y x))").unwrap().compact(), "x(yx)");
        assert_eq!(parse_term("y").unwrap().compact(), "y");
    }

    #[test]
    fn term_function_table() {
        let g = g1();
        let t = parse_term("(x (y x))").unwrap().term_function(&g).unwrap();
        assert_eq!(t.arity(), 2);
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(t.apply(&[x, y]), g.mul(x, g.mul(y, x)));
            }
        }
    }
}
