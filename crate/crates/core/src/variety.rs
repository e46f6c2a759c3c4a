//! Membership predicates for the varieties of groupoids used throughout the
//! crate. All checks are exhaustive over the carrier.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::term::{parse_identity, CompiledIdentity, Identity};

/// Largest prime accepted for p-cyclic checks.
pub const MAX_CYCLIC_PRIME: u64 = 31;

/// A failed membership check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// The identity that fails, in term syntax.
    pub identity: String,
    /// Variable names of the identity, in assignment order.
    pub vars: Vec<String>,
    /// The lexicographically first failing assignment.
    pub assignment: Vec<usize>,
}

/// A named variety, possibly taken dually.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Variety {
    Idempotent,
    Semigroup,
    LeftZero,
    RightZero,
    RectBand,
    LeftRegularBand,
    RightRegularBand,
    /// xx≈x, x(xy)≈x(yx)≈(xy)x≈(xy)y≈(xy)(yx)≈xy
    B,
    /// p-cyclic groupoids
    Cp(u64),
    /// x(y(zu)) ≈ x((yz)u)
    A,
    D,
    DCapA,
    /// Membership of the dual groupoid.
    Dual(Box<Variety>),
}

const BASE_VARIETIES: [Variety; 12] = [
    Variety::Idempotent,
    Variety::Semigroup,
    Variety::LeftZero,
    Variety::RightZero,
    Variety::RectBand,
    Variety::LeftRegularBand,
    Variety::RightRegularBand,
    Variety::B,
    Variety::Cp(2),
    Variety::A,
    Variety::D,
    Variety::DCapA,
];

impl Variety {
    /// Defining identities other than the infinite scheme of `D`.
    pub fn identities(&self) -> Result<Vec<Identity>> {
        let texts: &[&str] = match self {
            Variety::Idempotent => &["(x x) = x"],
            Variety::Semigroup => &[ASSOC],
            Variety::LeftZero => &["(x y) = x"],
            Variety::RightZero => &["(x y) = y"],
            Variety::RectBand => &["(x x) = x", ASSOC, "((x y) x) = x"],
            Variety::LeftRegularBand => &["(x x) = x", ASSOC, "((x y) x) = (x y)"],
            Variety::RightRegularBand => &["(x x) = x", ASSOC, "((x y) x) = (y x)"],
            Variety::B => &[
                "(x x) = x",
                "(x (x y)) = (x y)",
                "(x (y x)) = (x y)",
                "((x y) x) = (x y)",
                "((x y) y) = (x y)",
                "((x y) (y x)) = (x y)",
            ],
            Variety::Cp(p) => return cyclic_identities(*p),
            Variety::A => &["(x (y (z u))) = (x ((y z) u))"],
            Variety::D => &[
                "(x (y x)) = (x y)",
                "((x y) x) = (x y)",
                "((x y) y) = (x y)",
                "((x y) (y x)) = (x y)",
            ],
            Variety::DCapA => &["(x x) = x", "(x (y z)) = (x y)", "((x y) y) = (x y)"],
            Variety::Dual(v) => {
                return Ok(v.identities()?.iter().map(Identity::mirrored).collect())
            }
        };
        Ok(texts
            .iter()
            .map(|t| parse_identity(t).expect("built-in identity"))
            .collect())
    }

    /// First violated defining identity, or `None` when `g` belongs to the variety.
    pub fn violation(&self, g: &Groupoid) -> Result<Option<Violation>> {
        if let Variety::Dual(v) = self {
            return v.violation(&g.dual());
        }
        for id in self.identities()? {
            if let Some(assignment) = id.counterexample(g)? {
                return Ok(Some(Violation {
                    identity: id.to_string(),
                    vars: id.vars().to_vec(),
                    assignment,
                }));
            }
        }
        if *self == Variety::D {
            if let Some((x, w)) = d_scheme_violation(g) {
                return Ok(Some(Violation {
                    identity: "(x w) = x for w reachable from x by right multiplications".into(),
                    vars: vec!["x".into(), "w".into()],
                    assignment: vec![x, w],
                }));
            }
        }
        Ok(None)
    }

    pub fn contains(&self, g: &Groupoid) -> Result<bool> {
        Ok(self.violation(g)?.is_none())
    }

    /// Every accepted variety name, without the dual suffix.
    pub fn names() -> Vec<String> {
        BASE_VARIETIES.iter().map(|v| v.to_string()).collect()
    }
}

const ASSOC: &str = "((x y) z) = (x (y z))";

fn cyclic_identities(p: u64) -> Result<Vec<Identity>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > MAX_CYCLIC_PRIME {
        return Err(Error::guard("cyclic prime", MAX_CYCLIC_PRIME, p));
    }
    let mut power = "x".to_string();
    for _ in 0..p {
        power = format!("({power} y)");
    }
    let texts = [
        "(x x) = x".to_string(),
        "(x (y z)) = (x y)".into(),
        "((x y) z) = ((x z) y)".into(),
        format!("{power} = x"),
    ];
    Ok(texts
        .iter()
        .map(|t| parse_identity(t).expect("built-in identity"))
        .collect())
}

pub fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variety::Idempotent => f.write_str("idempotent"),
            Variety::Semigroup => f.write_str("semigroup"),
            Variety::LeftZero => f.write_str("left-zero"),
            Variety::RightZero => f.write_str("right-zero"),
            Variety::RectBand => f.write_str("rect-band"),
            Variety::LeftRegularBand => f.write_str("left-regular-band"),
            Variety::RightRegularBand => f.write_str("right-regular-band"),
            Variety::B => f.write_str("B"),
            Variety::Cp(p) => write!(f, "Cp:{p}"),
            Variety::A => f.write_str("A"),
            Variety::D => f.write_str("D"),
            Variety::DCapA => f.write_str("DcapA"),
            Variety::Dual(v) => write!(f, "{v}^d"),
        }
    }
}

impl FromStr for Variety {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(base) = s.strip_suffix("^d") {
            let inner: Variety = base.parse()?;
            if matches!(inner, Variety::Dual(_)) {
                return Err(Error::Invalid(format!("variety `{s}` is dualized twice")));
            }
            return Ok(Variety::Dual(Box::new(inner)));
        }
        let v = match s {
            "idempotent" => Variety::Idempotent,
            "semigroup" | "is_semigroup" => Variety::Semigroup,
            "left-zero" | "is_left_zero" => Variety::LeftZero,
            "right-zero" | "is_right_zero" => Variety::RightZero,
            "rect-band" | "is_rect_band" => Variety::RectBand,
            "left-regular-band" | "is_left_regular_band" => Variety::LeftRegularBand,
            "right-regular-band" | "is_right_regular_band" => Variety::RightRegularBand,
            "B" => Variety::B,
            "A" => Variety::A,
            "D" => Variety::D,
            "DcapA" => Variety::DCapA,
            _ => match s.strip_prefix("Cp:") {
                Some(p) => {
                    let p: u64 = p
                        .parse()
                        .map_err(|_| Error::Invalid(format!("bad prime in `{s}`")))?;
                    if !is_prime(p) {
                        return Err(Error::NotPrime(p));
                    }
                    Variety::Cp(p)
                }
                None => {
                    return Err(Error::Invalid(format!(
                        "unknown variety `{s}` (expected one of {}, optionally suffixed with ^d)",
                        Variety::names().join(", ")
                    )))
                }
            },
        };
        Ok(v)
    }
}

/// Decides `x · ←(x y₁ … yₙ) ≈ x` for all `n ≥ 0` at once: the values of the
/// left-associated products starting at `x` are exactly the closure of `{x}`
/// under right multiplication. Returns the first `(x, w)` with `x·w ≠ x`.
pub fn d_scheme_violation(g: &Groupoid) -> Option<(usize, usize)> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut stack = Vec::with_capacity(n);
    for x in 0..n {
        seen.fill(false);
        seen[x] = true;
        stack.push(x);
        while let Some(w) = stack.pop() {
            for a in 0..n {
                let v = g.mul(w, a);
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        if let Some(w) = (0..n).find(|&w| seen[w] && g.mul(x, w) != x) {
            return Some((x, w));
        }
    }
    None
}

pub fn satisfies_d_scheme(g: &Groupoid) -> bool {
    d_scheme_violation(g).is_none()
}

/// The `n`-th instance of the `D` scheme, `x · ←(x y1 … yn) = x`.
pub fn d_scheme_instance(n: usize) -> Identity {
    let mut inner = "x".to_string();
    for i in 1..=n {
        inner = format!("({inner} y{i})");
    }
    parse_identity(&format!("(x {inner}) = x")).expect("built-in identity")
}

fn holds(g: &Groupoid, v: Variety) -> bool {
    v.contains(g)
        .expect("built-in varieties have at most four variables")
}

pub fn is_semigroup(g: &Groupoid) -> bool {
    holds(g, Variety::Semigroup)
}

pub fn is_left_zero(g: &Groupoid) -> bool {
    holds(g, Variety::LeftZero)
}

pub fn is_right_zero(g: &Groupoid) -> bool {
    holds(g, Variety::RightZero)
}

pub fn is_rect_band(g: &Groupoid) -> bool {
    holds(g, Variety::RectBand)
}

pub fn is_left_regular_band(g: &Groupoid) -> bool {
    holds(g, Variety::LeftRegularBand)
}

pub fn is_right_regular_band(g: &Groupoid) -> bool {
    holds(g, Variety::RightRegularBand)
}

pub fn in_b(g: &Groupoid) -> bool {
    holds(g, Variety::B)
}

pub fn in_cp(g: &Groupoid, p: u64) -> Result<bool> {
    Variety::Cp(p).contains(g)
}

pub fn in_a(g: &Groupoid) -> bool {
    holds(g, Variety::A)
}

pub fn in_d(g: &Groupoid) -> bool {
    holds(g, Variety::D)
}

pub fn in_d_cap_a(g: &Groupoid) -> bool {
    holds(g, Variety::DCapA)
}

/// Associativity on a raw row-major table; used by the table scans.
pub fn table_is_associative(table: &[u8], n: usize) -> bool {
    (0..n).all(|x| {
        (0..n).all(|y| {
            let xy = table[x * n + y] as usize;
            (0..n).all(|z| table[xy * n + z] == table[x * n + table[y * n + z] as usize])
        })
    })
}

/// Compiled identity set for raw-table scans.
#[derive(Clone, Debug)]
pub struct CompiledSet(Vec<CompiledIdentity>);

impl CompiledSet {
    pub fn new(ids: &[Identity]) -> Result<Self> {
        Ok(CompiledSet(
            ids.iter()
                .map(CompiledIdentity::new)
                .collect::<Result<_>>()?,
        ))
    }

    pub fn holds(&self, table: &[u8], n: usize) -> bool {
        self.0.iter().all(|c| c.holds(table, n))
    }
}
