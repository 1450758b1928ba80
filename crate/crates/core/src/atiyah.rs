//! Formal algebra of vector bundles on an elliptic curve.
//!
//! An [`Atom`] is an indecomposable bundle, recorded by rank, degree and a
//! formal twist: a free-abelian combination of line-bundle symbols. Two atoms
//! are isomorphic exactly when all three agree. A [`Bundle`] is a direct sum
//! of atoms.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};

/// Formal product of symbols with integer exponents. Empty means trivial.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Twist(BTreeMap<String, i64>);

impl Twist {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn symbol(name: &str) -> Self {
        Self(BTreeMap::from([(name.to_string(), 1)]))
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn combine(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for (k, v) in &other.0 {
            *out.entry(k.clone()).or_insert(0) += v;
        }
        out.retain(|_, v| *v != 0);
        Self(out)
    }

    pub fn power(&self, k: i64) -> Self {
        if k == 0 {
            return Self::trivial();
        }
        Self(self.0.iter().map(|(s, v)| (s.clone(), v * k)).collect())
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(s, &v)| if v == 1 { s.clone() } else { format!("{s}^{v}") })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Atom {
    pub rank: i64,
    pub degree: i64,
    pub twist: Twist,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Atom {
    pub fn new(rank: i64, degree: i64, twist: Twist) -> Result<Self> {
        if rank < 1 {
            return Err(Error::Malformed(format!("rank must be positive, got {rank}")));
        }
        Ok(Self { rank, degree, twist })
    }

    /// `F_r` twisted to degree `d`, trivial twist.
    pub fn indecomposable(rank: i64, degree: i64) -> Result<Self> {
        Self::new(rank, degree, Twist::trivial())
    }

    pub fn line(symbol: &str, degree: i64) -> Self {
        Self {
            rank: 1,
            degree,
            twist: Twist::symbol(symbol),
        }
    }

    pub fn trivial_line() -> Self {
        Self {
            rank: 1,
            degree: 0,
            twist: Twist::trivial(),
        }
    }

    pub fn slope(&self) -> Ratio<i64> {
        Ratio::new(self.degree, self.rank)
    }

    /// `gcd(r, d)`: the `h` with `(r, d) = h·(r', d')`, `r'` and `d'` coprime.
    pub fn multiplicity(&self) -> i64 {
        gcd(self.rank, self.degree)
    }

    pub fn h0(&self) -> i64 {
        match self.degree {
            d if d > 0 => d,
            d if d < 0 => 0,
            _ => i64::from(self.twist.is_trivial()),
        }
    }

    pub fn dual(&self) -> Self {
        Self {
            rank: self.rank,
            degree: -self.degree,
            twist: self.twist.power(-1),
        }
    }

    pub fn determinant(&self) -> Self {
        Self {
            rank: 1,
            degree: self.degree,
            twist: self.twist.power(self.rank),
        }
    }

    fn tensor(&self, other: &Self) -> Result<Vec<Self>> {
        let twist = self.twist.combine(&other.twist);
        if self.rank == 1 || other.rank == 1 {
            return Ok(vec![Self {
                rank: self.rank * other.rank,
                degree: self.degree * other.rank + other.degree * self.rank,
                twist,
            }]);
        }
        if self.degree % self.rank != 0 || other.degree % other.rank != 0 {
            return Err(Error::Unimplemented(format!(
                "tensor of {self} and {other}: only line twists of F_r are supported"
            )));
        }
        let slope = self.degree / self.rank + other.degree / other.rank;
        let (r, s) = (self.rank, other.rank);
        Ok((0..r.min(s))
            .map(|k| {
                let rank = r + s - 1 - 2 * k;
                Self {
                    rank,
                    degree: slope * rank,
                    twist: twist.clone(),
                }
            })
            .collect())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E({},{})", self.rank, self.degree)?;
        if !self.twist.is_trivial() {
            write!(f, "[{}]", self.twist)?;
        }
        Ok(())
    }
}

/// Direct sum of atoms, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Bundle {
    atoms: Vec<Atom>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Stability {
    pub stable: bool,
    pub semistable: bool,
    pub polystable: bool,
    pub regular: bool,
    pub regular_polystable: bool,
}

impl Bundle {
    pub fn new(mut atoms: Vec<Atom>) -> Self {
        atoms.sort();
        Self { atoms }
    }

    pub fn atom(a: Atom) -> Self {
        Self { atoms: vec![a] }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    fn require_nonempty(&self) -> Result<()> {
        if self.atoms.is_empty() {
            return Err(Error::Malformed("empty bundle expression".into()));
        }
        Ok(())
    }

    pub fn rank(&self) -> Result<i64> {
        self.require_nonempty()?;
        Ok(self.atoms.iter().map(|a| a.rank).sum())
    }

    pub fn degree(&self) -> Result<i64> {
        self.require_nonempty()?;
        Ok(self.atoms.iter().map(|a| a.degree).sum())
    }

    pub fn slope(&self) -> Result<Ratio<i64>> {
        Ok(Ratio::new(self.degree()?, self.rank()?))
    }

    pub fn h0(&self) -> i64 {
        self.atoms.iter().map(Atom::h0).sum()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(self.atoms.iter().chain(&other.atoms).cloned().collect())
    }

    pub fn dual(&self) -> Self {
        Self::new(self.atoms.iter().map(Atom::dual).collect())
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let mut out = Vec::new();
        for a in &self.atoms {
            for b in &other.atoms {
                out.extend(a.tensor(b)?);
            }
        }
        Ok(Self::new(out))
    }

    pub fn determinant(&self) -> Result<Atom> {
        self.require_nonempty()?;
        Ok(self
            .atoms
            .iter()
            .map(Atom::determinant)
            .reduce(|a, b| Atom {
                rank: 1,
                degree: a.degree + b.degree,
                twist: a.twist.combine(&b.twist),
            })
            .expect("nonempty"))
    }

    /// `E ⊗ E^∨`.
    pub fn end(&self) -> Result<Self> {
        self.tensor(&self.dual())
    }

    /// Third symmetric power of a rank-two bundle.
    pub fn sym3_rank2(&self) -> Result<Self> {
        match self.atoms.as_slice() {
            [l, m] if l.rank == 1 && m.rank == 1 => {
                let mono = |i: i64, j: i64| Atom {
                    rank: 1,
                    degree: i * l.degree + j * m.degree,
                    twist: l.twist.power(i).combine(&m.twist.power(j)),
                };
                Ok(Self::new(vec![mono(3, 0), mono(2, 1), mono(1, 2), mono(0, 3)]))
            }
            [e] if e.rank == 2 && e.degree % 2 == 0 => Ok(Self::atom(Atom {
                rank: 4,
                degree: 6 * e.degree,
                twist: e.twist.power(3),
            })),
            [e] if e.rank == 2 => Err(Error::Unimplemented(
                "third symmetric power of an odd-degree indecomposable rank-2 bundle".into(),
            )),
            _ => Err(Error::Constraint(format!(
                "third symmetric power needs rank 2, got rank {}",
                self.rank()?
            ))),
        }
    }

    /// `S³E ⊗ (det E)⁻¹`.
    pub fn sym3_twisted(&self) -> Result<Self> {
        let inv_det = Self::atom(self.determinant()?.dual());
        self.sym3_rank2()?.tensor(&inv_det)
    }

    /// `h⁰(End E)` for a semistable bundle, from `Hom(E'⊗F_a, E'⊗F_b) = min(a, b)`.
    fn h0_end_semistable(&self) -> i64 {
        let mut total = 0;
        for a in &self.atoms {
            for b in &self.atoms {
                if a.twist == b.twist && a.slope() == b.slope() {
                    total += a.multiplicity().min(b.multiplicity());
                }
            }
        }
        total
    }

    pub fn stability(&self) -> Result<Stability> {
        self.require_nonempty()?;
        let mu = self.atoms[0].slope();
        let semistable = self.atoms.iter().all(|a| a.slope() == mu);
        let coprime = self.atoms.iter().all(|a| a.multiplicity() == 1);
        let stable = self.atoms.len() == 1 && coprime;
        let polystable = semistable && coprime;
        let h = gcd(self.rank()?, self.degree()?);
        let regular = semistable && self.h0_end_semistable() == h;
        let distinct = self.atoms.windows(2).all(|w| w[0] != w[1]);
        Ok(Stability {
            stable,
            semistable,
            polystable,
            regular,
            regular_polystable: polystable && distinct,
        })
    }

    /// `h⁰(End E)` for semistable bundles even where [`Bundle::end`] is not implemented.
    pub fn h0_end(&self) -> Result<i64> {
        if self.stability()?.semistable {
            return Ok(self.h0_end_semistable());
        }
        Ok(self.end()?.h0())
    }

    pub fn parse(s: &str) -> Result<Self> {
        Parser::new(s).parse()
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.atoms.iter().map(Atom::to_string).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Sum,
    Product,
    Open,
    Close,
    Comma,
    Ident(String),
    Int(i64),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        match chars[i] {
            '⊕' => {
                out.push(Token::Sum);
                i += 1;
            }
            '⊗' => {
                out.push(Token::Product);
                i += 1;
            }
            '(' if rest == "(+)" => {
                out.push(Token::Sum);
                i += 3;
            }
            '(' if rest == "(x)" => {
                out.push(Token::Product);
                i += 3;
            }
            '(' => {
                out.push(Token::Open);
                i += 1;
            }
            ')' => {
                out.push(Token::Close);
                i += 1;
            }
            ',' => {
                out.push(Token::Comma);
                i += 1;
            }
            c if c.is_ascii_digit() || c == '-' => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let v = text
                    .parse()
                    .map_err(|_| Error::Malformed(format!("bad integer {text:?}")))?;
                out.push(Token::Int(v));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            c => return Err(Error::Malformed(format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

/// `sum := product (⊕ product)*`, `product := primary (⊗ primary)*`,
/// `primary := F(r,d) | L(sym,deg) | ( sum )`.
struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    source: String,
    symbols: BTreeMap<String, i64>,
}

impl Parser {
    fn new(s: &str) -> Self {
        Self {
            tokens: Vec::new(),
            pos: 0,
            source: s.to_string(),
            symbols: BTreeMap::new(),
        }
    }

    fn parse(mut self) -> Result<Bundle> {
        self.tokens = tokenize(&self.source)?;
        let b = self.sum()?;
        if self.pos != self.tokens.len() {
            return Err(self.error("trailing input"));
        }
        Ok(b)
    }

    fn error(&self, what: &str) -> Error {
        Error::Malformed(format!("{what} at token {} of {:?}", self.pos, self.source))
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn expect(&mut self, t: Token) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected {t:?}")))
        }
    }

    fn int(&mut self) -> Result<i64> {
        match self.peek() {
            Some(Token::Int(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.error("expected integer")),
        }
    }

    fn sum(&mut self) -> Result<Bundle> {
        let mut acc = self.product()?;
        while self.peek() == Some(&Token::Sum) {
            self.pos += 1;
            acc = acc.direct_sum(&self.product()?);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Bundle> {
        let mut acc = self.primary()?;
        while self.peek() == Some(&Token::Product) {
            self.pos += 1;
            acc = acc.tensor(&self.primary()?)?;
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Bundle> {
        match self.peek().cloned() {
            Some(Token::Open) => {
                self.pos += 1;
                let b = self.sum()?;
                self.expect(Token::Close)?;
                Ok(b)
            }
            Some(Token::Ident(name)) if name == "F" => {
                self.pos += 1;
                self.expect(Token::Open)?;
                let r = self.int()?;
                self.expect(Token::Comma)?;
                let d = self.int()?;
                self.expect(Token::Close)?;
                Ok(Bundle::atom(Atom::indecomposable(r, d)?))
            }
            Some(Token::Ident(name)) if name == "L" => {
                self.pos += 1;
                self.expect(Token::Open)?;
                let sym = match self.peek().cloned() {
                    Some(Token::Ident(s)) => s,
                    _ => return Err(self.error("expected line-bundle symbol")),
                };
                self.pos += 1;
                self.expect(Token::Comma)?;
                let d = self.int()?;
                self.expect(Token::Close)?;
                if let Some(&prev) = self.symbols.get(&sym) {
                    if prev != d {
                        return Err(Error::Malformed(format!(
                            "symbol {sym} used with degrees {prev} and {d}"
                        )));
                    }
                }
                self.symbols.insert(sym.clone(), d);
                Ok(Bundle::atom(Atom::line(&sym, d)))
            }
            _ => Err(self.error("expected F(r,d), L(sym,deg) or a parenthesized sum")),
        }
    }
}

/// `h⁰(S³E ⊗ det⁻¹)` for `E = L ⊕ M`, `deg L = a ≤ b = deg M`, closed form `2(a+b) + ε`.
pub fn h0_sym3_twisted_split(a: i64, b: i64, eps: i64) -> Result<i64> {
    if a < 1 {
        return Err(Error::Constraint(format!("need a ≥ 1 (got a = {a}): a ≤ 0 forces b ≤ 2a ≤ 0")));
    }
    if a > b {
        return Err(Error::Constraint(format!("need a ≤ b (got a = {a}, b = {b})")));
    }
    if 2 * a < b {
        return Err(Error::Constraint(format!("need 2a ≥ b (got a = {a}, b = {b})")));
    }
    if !(eps == 0 || eps == 1) {
        return Err(Error::Constraint(format!("ε must be 0 or 1, got {eps}")));
    }
    if eps == 1 && b != 2 * a {
        return Err(Error::Constraint("ε = 1 requires L² ≅ M, hence b = 2a".into()));
    }
    Ok(2 * (a + b) + eps)
}

/// The configurations of rank-two Tschirnhausen modules of triple covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ModuliCase {
    /// `E = L ⊕ M`, `a < b < 2a`.
    Unbalanced { a: i64, b: i64 },
    /// `E = L ⊕ M`, `a = b`, `L ≇ M`.
    BalancedDistinct { a: i64 },
    /// `E = L ⊕ L`.
    BalancedEqual { a: i64 },
    /// `E = L ⊕ M`, `b = 2a`; `square` when `M ≅ L²`.
    Doubled { a: i64, square: bool },
    /// `E = L ⊗ F₂` with `deg E = e` even.
    Indecomposable { e: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuliCount {
    pub case: u8,
    pub n: i64,
    pub base_dim: i64,
    pub h0_sym3_twisted: i64,
    pub h0_end: i64,
    /// `base_dim + h0_sym3_twisted − h0_end`
    pub bound: i64,
    pub closed_form: i64,
    pub closed_label: &'static str,
}

impl ModuliCount {
    pub fn agrees(&self) -> bool {
        self.bound == self.closed_form
    }
}

impl ModuliCase {
    /// Builds a case from the CLI-style `(case, a, b, e)` arguments.
    pub fn from_args(case: u8, a: Option<i64>, b: Option<i64>, e: Option<i64>, square: bool) -> Result<Self> {
        let need = |x: Option<i64>, name: &str| {
            x.ok_or_else(|| Error::Malformed(format!("case {case} needs --{name}")))
        };
        let half = |e: i64| {
            if e % 2 != 0 {
                Err(Error::Constraint(format!("case {case} has a = b, so e = 2a must be even (got e = {e})")))
            } else {
                Ok(e / 2)
            }
        };
        let c = match case {
            1 => Self::Unbalanced { a: need(a, "a")?, b: need(b, "b")? },
            2 => Self::BalancedDistinct { a: match a { Some(a) => a, None => half(need(e, "e")?)? } },
            3 => Self::BalancedEqual { a: match a { Some(a) => a, None => half(need(e, "e")?)? } },
            4 => {
                let a = match (a, e) {
                    (Some(a), _) => a,
                    (None, Some(e)) if e % 3 == 0 => e / 3,
                    (None, Some(e)) => {
                        return Err(Error::Constraint(format!("case 4 has b = 2a, so 3 | e (got e = {e})")))
                    }
                    (None, None) => return Err(Error::Malformed("case 4 needs --a or --e".into())),
                };
                if let Some(b) = b {
                    if b != 2 * a {
                        return Err(Error::Constraint(format!("case 4 needs b = 2a (got a = {a}, b = {b})")));
                    }
                }
                Self::Doubled { a, square }
            }
            5 => Self::Indecomposable { e: need(e, "e")? },
            _ => return Err(Error::Malformed(format!("case must be 1..5, got {case}"))),
        };
        c.check()?;
        Ok(c)
    }

    pub fn number(&self) -> u8 {
        match self {
            Self::Unbalanced { .. } => 1,
            Self::BalancedDistinct { .. } => 2,
            Self::BalancedEqual { .. } => 3,
            Self::Doubled { .. } => 4,
            Self::Indecomposable { .. } => 5,
        }
    }

    fn check(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Constraint(msg));
        match *self {
            Self::Unbalanced { a, b } if !(a < b && b < 2 * a) => {
                fail(format!("case 1 needs a < b < 2a (got a = {a}, b = {b})"))
            }
            Self::BalancedDistinct { a } | Self::BalancedEqual { a } | Self::Doubled { a, .. } if a < 1 => {
                fail(format!("need a ≥ 1 (got a = {a})"))
            }
            Self::Indecomposable { e } if e < 2 || e % 2 != 0 => {
                fail(format!("case 5 needs e even and positive (got e = {e})"))
            }
            _ => Ok(()),
        }
    }

    /// The bundle `E`, the dimension of the family it moves in, and the closed form.
    fn data(&self) -> (Bundle, i64, i64, &'static str) {
        let l = |deg| Atom::line("L", deg);
        match *self {
            Self::Unbalanced { a, b } => {
                let n = 2 * (a + b);
                (Bundle::new(vec![l(a), Atom::line("M", b)]), 2, n - (b - a), "n-(b-a)")
            }
            Self::BalancedDistinct { a } => (Bundle::new(vec![l(a), Atom::line("M", a)]), 2, 4 * a, "n"),
            Self::BalancedEqual { a } => (Bundle::new(vec![l(a), l(a)]), 1, 4 * a - 3, "n-3"),
            Self::Doubled { a, square } => {
                let m = if square {
                    Atom { rank: 1, degree: 2 * a, twist: Twist::symbol("L").power(2) }
                } else {
                    Atom::line("M", 2 * a)
                };
                let n = 6 * a;
                (Bundle::new(vec![l(a), m]), if square { 1 } else { 2 }, n - a, "n-(b-a)")
            }
            Self::Indecomposable { e } => {
                let atom = Atom { rank: 2, degree: e, twist: Twist::symbol("L") };
                (Bundle::atom(atom), 1, 2 * e - 1, "n-1")
            }
        }
    }

    /// Upper bound on the number of moduli, from the component computations.
    pub fn count(&self) -> Result<ModuliCount> {
        self.check()?;
        let (bundle, base_dim, closed_form, closed_label) = self.data();
        let h0_sym3_twisted = bundle.sym3_twisted()?.h0();
        let h0_end = bundle.end()?.h0();
        Ok(ModuliCount {
            case: self.number(),
            n: 2 * bundle.degree()?,
            base_dim,
            h0_sym3_twisted,
            h0_end,
            bound: base_dim + h0_sym3_twisted - h0_end,
            closed_form,
            closed_label,
        })
    }

    /// Every admissible configuration with `deg E ≤ max_e`.
    pub fn grid(max_e: i64) -> Vec<Self> {
        let mut out = Vec::new();
        for a in 1..=max_e {
            for b in a + 1..2 * a {
                if a + b <= max_e {
                    out.push(Self::Unbalanced { a, b });
                }
            }
            if 2 * a <= max_e {
                out.push(Self::BalancedDistinct { a });
                out.push(Self::BalancedEqual { a });
            }
            if 3 * a <= max_e {
                out.push(Self::Doubled { a, square: false });
                out.push(Self::Doubled { a, square: true });
            }
        }
        for e in (2..=max_e).step_by(2) {
            out.push(Self::Indecomposable { e });
        }
        out
    }
}

/// `(deg E, deg R)` for a degree-`d` cover `X → Y` with Tschirnhausen module `E^∨`.
pub fn tschirnhausen_degree(d: i64, genus_x: i64, genus_y: i64) -> Result<(i64, i64)> {
    if d < 2 || genus_y < 0 || genus_x < genus_y {
        return Err(Error::Malformed(format!(
            "need d ≥ 2 and g(X) ≥ g(Y) ≥ 0 (got d = {d}, g(X) = {genus_x}, g(Y) = {genus_y})"
        )));
    }
    let deg_e = genus_x - 1 + d * (1 - genus_y);
    if deg_e < 0 {
        return Err(Error::Constraint(format!(
            "negative ramification degree {} for d = {d}, g(X) = {genus_x}, g(Y) = {genus_y}",
            2 * deg_e
        )));
    }
    Ok((deg_e, 2 * deg_e))
}
