//! Monomials as exponent vectors and monomial ideals whose generator
//! sequence carries the total order (position 0 is the smallest generator).

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest exponent accepted from user input.
pub const MAX_EXPONENT: u32 = i32::MAX as u32;

/// Ordered list of distinct variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableContext {
    names: Vec<String>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VariableContext {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyContext);
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !is_identifier(name) {
                return Err(Error::InvalidVariableName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateVariable(name.clone()));
            }
        }
        Ok(Arc::new(Self { names }))
    }

    /// `x1, ..., xN`.
    pub fn indexed(prefix: &str, n: usize) -> Result<Arc<Self>> {
        Self::new((1..=n).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A monomial over a [`VariableContext`].
///
/// Square-free monomials over at most 64 variables also carry their support
/// as a bitmask, which makes `lcm` and `divides` a single word operation.
#[derive(Clone)]
pub struct Monomial {
    ctx: Arc<VariableContext>,
    exponents: Box<[u32]>,
    support: Option<u64>,
}

fn squarefree_mask(exponents: &[u32]) -> Option<u64> {
    if exponents.len() > 64 || exponents.iter().any(|&e| e > 1) {
        return None;
    }
    Some(
        exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e == 1)
            .fold(0u64, |m, (i, _)| m | (1 << i)),
    )
}

impl Monomial {
    pub fn one(ctx: &Arc<VariableContext>) -> Self {
        Self::from_raw(ctx.clone(), vec![0; ctx.len()].into_boxed_slice())
    }

    pub fn new(ctx: &Arc<VariableContext>, exponents: Vec<u32>) -> Result<Self> {
        if exponents.len() != ctx.len() {
            return Err(Error::ExponentLength {
                expected: ctx.len(),
                got: exponents.len(),
            });
        }
        if let Some(&e) = exponents.iter().find(|&&e| e > MAX_EXPONENT) {
            return Err(Error::ExponentTooLarge(e as u64));
        }
        Ok(Self::from_raw(ctx.clone(), exponents.into_boxed_slice()))
    }

    /// Square-free monomial with the given support bits (bit i = variable i).
    pub fn from_support(ctx: &Arc<VariableContext>, mask: u64) -> Result<Self> {
        if ctx.len() < 64 && mask >> ctx.len() != 0 {
            return Err(Error::Invalid(format!(
                "support mask {mask:#b} has bits beyond {} variables",
                ctx.len()
            )));
        }
        let exps = (0..ctx.len()).map(|i| ((mask >> i) & 1) as u32).collect();
        Self::new(ctx, exps)
    }

    pub(crate) fn from_raw(ctx: Arc<VariableContext>, exponents: Box<[u32]>) -> Self {
        let support = squarefree_mask(&exponents);
        Self {
            ctx,
            exponents,
            support,
        }
    }

    pub fn context(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Support bitmask when the monomial is square-free (and N <= 64).
    pub fn support_mask(&self) -> Option<u64> {
        self.support
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.iter().all(|&e| e <= 1)
    }

    pub fn degree(&self) -> u64 {
        self.exponents.iter().map(|&e| e as u64).sum()
    }

    fn same_context(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn lcm(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        if let (Some(a), Some(b)) = (self.support, other.support) {
            let mask = a | b;
            let exps = (0..self.exponents.len())
                .map(|i| ((mask >> i) & 1) as u32)
                .collect();
            return Ok(Self {
                ctx: self.ctx.clone(),
                exponents: exps,
                support: Some(mask),
            });
        }
        let exps = self
            .exponents
            .iter()
            .zip(other.exponents.iter())
            .map(|(&a, &b)| a.max(b))
            .collect();
        Ok(Self::from_raw(self.ctx.clone(), exps))
    }

    /// True iff `self` divides `other`.
    pub fn divides(&self, other: &Self) -> Result<bool> {
        self.same_context(other)?;
        if let (Some(a), Some(b)) = (self.support, other.support) {
            return Ok(a & !b == 0);
        }
        Ok(self
            .exponents
            .iter()
            .zip(other.exponents.iter())
            .all(|(&a, &b)| a <= b))
    }

    /// `self / divisor`, or `None` when `divisor` does not divide `self`.
    pub fn quotient(&self, divisor: &Self) -> Result<Option<Self>> {
        if !divisor.divides(self)? {
            return Ok(None);
        }
        let exps = self
            .exponents
            .iter()
            .zip(divisor.exponents.iter())
            .map(|(&a, &b)| a - b)
            .collect();
        Ok(Some(Self::from_raw(self.ctx.clone(), exps)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        let mut exps = Vec::with_capacity(self.exponents.len());
        for (&a, &b) in self.exponents.iter().zip(other.exponents.iter()) {
            let e = a as u64 + b as u64;
            if e > MAX_EXPONENT as u64 {
                return Err(Error::ExponentTooLarge(e));
            }
            exps.push(e as u32);
        }
        Ok(Self::from_raw(self.ctx.clone(), exps.into_boxed_slice()))
    }

    /// Parse a `*`-joined product of `var` / `var^k` factors, or `1`.
    pub fn parse(ctx: &Arc<VariableContext>, text: &str) -> Result<Self> {
        let text = text.trim();
        let err = |message: String| Error::Parse { line: 0, message };
        if text == "1" {
            return Ok(Self::one(ctx));
        }
        if text.is_empty() {
            return Err(err("empty monomial".into()));
        }
        let mut exps = vec![0u64; ctx.len()];
        for factor in text.split('*') {
            let factor = factor.trim();
            let (name, power) = match factor.split_once('^') {
                Some((name, k)) => {
                    let k: u64 = k
                        .trim()
                        .parse()
                        .map_err(|_| err(format!("malformed power in `{factor}`")))?;
                    if k == 0 {
                        return Err(err(format!(
                            "malformed power in `{factor}`: exponent must be >= 1"
                        )));
                    }
                    (name.trim(), k)
                }
                None => (factor, 1),
            };
            if name.is_empty() {
                return Err(err(format!("malformed factor in `{text}`")));
            }
            let i = ctx
                .index_of(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            exps[i] = exps[i].saturating_add(power);
        }
        if let Some(&e) = exps.iter().find(|&&e| e > MAX_EXPONENT as u64) {
            return Err(Error::ExponentTooLarge(e));
        }
        Self::new(ctx, exps.into_iter().map(|e| e as u32).collect())
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.exponents == other.exponents
            && (Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx)
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exponents.hash(state);
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, &e) in self.ctx.names().iter().zip(self.exponents.iter()) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}

pub fn monomial_lcm(a: &Monomial, b: &Monomial) -> Result<Monomial> {
    a.lcm(b)
}

pub fn divides(a: &Monomial, b: &Monomial) -> Result<bool> {
    a.divides(b)
}

/// Result of [`minimize_generators`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimized {
    pub generators: Vec<Monomial>,
    pub removed: Vec<Monomial>,
}

impl Minimized {
    pub fn changed(&self) -> bool {
        !self.removed.is_empty()
    }
}

/// Drops duplicates and every monomial strictly divisible by another one.
/// Survivors keep their input order.
pub fn minimize_generators(monomials: &[Monomial]) -> Result<Minimized> {
    if monomials.iter().any(Monomial::is_one) {
        return Err(Error::UnitGenerator);
    }
    let mut generators = Vec::new();
    let mut removed = Vec::new();
    for (i, m) in monomials.iter().enumerate() {
        let mut redundant = monomials[..i].iter().any(|g| g == m);
        if !redundant {
            for g in monomials {
                if g != m && g.divides(m)? {
                    redundant = true;
                    break;
                }
            }
        }
        if redundant {
            removed.push(m.clone());
        } else {
            generators.push(m.clone());
        }
    }
    Ok(Minimized {
        generators,
        removed,
    })
}

/// A monomial ideal given by its minimal generators listed smallest-first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    ctx: Arc<VariableContext>,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds an ideal, rejecting non-minimal generator lists.
    pub fn new(ctx: &Arc<VariableContext>, generators: Vec<Monomial>) -> Result<Self> {
        for g in &generators {
            if g.ctx != *ctx {
                return Err(Error::ContextMismatch);
            }
        }
        let minimized = minimize_generators(&generators)?;
        if minimized.changed() {
            let names: Vec<String> = minimized.removed.iter().map(|m| m.to_string()).collect();
            return Err(Error::NotMinimal(format!(
                "redundant generators {}",
                names.join(", ")
            )));
        }
        let generators = generators
            .into_iter()
            .map(|g| Monomial {
                ctx: ctx.clone(),
                ..g
            })
            .collect();
        Ok(Self {
            ctx: ctx.clone(),
            generators,
        })
    }

    /// Minimizes first; returns the ideal and whatever was removed.
    pub fn minimized(
        ctx: &Arc<VariableContext>,
        monomials: Vec<Monomial>,
    ) -> Result<(Self, Vec<Monomial>)> {
        let Minimized {
            generators,
            removed,
        } = minimize_generators(&monomials)?;
        Ok((Self::new(ctx, generators)?, removed))
    }

    pub fn zero(ctx: &Arc<VariableContext>) -> Self {
        Self {
            ctx: ctx.clone(),
            generators: Vec::new(),
        }
    }

    pub fn context(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn position_of(&self, m: &Monomial) -> Option<usize> {
        self.generators.iter().position(|g| g == m)
    }

    /// New ideal whose position `p` holds the old generator `perm[p]`.
    pub fn reordered(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.len())?;
        Ok(Self {
            ctx: self.ctx.clone(),
            generators: perm.iter().map(|&i| self.generators[i].clone()).collect(),
        })
    }

    /// Resolves a comma-separated smallest-first list of generator names
    /// (canonical printing) into a permutation of generator indices.
    pub fn order_from_names(&self, text: &str) -> Result<Vec<usize>> {
        let parts: Vec<&str> = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        let canonical: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        let mut perm = Vec::with_capacity(parts.len());
        for part in parts {
            let i = canonical
                .iter()
                .position(|c| c == part)
                .ok_or_else(|| Error::InvalidOrder(format!("`{part}` is not a generator")))?;
            perm.push(i);
        }
        check_permutation(&perm, self.len())?;
        Ok(perm)
    }

    /// Canonical ideal file text.
    pub fn to_file_string(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        let sep = if gens.is_empty() { "" } else { " " };
        format!(
            "vars: {}\ngens:{sep}{}\n",
            self.ctx.names().join(" "),
            gens.join(" ")
        )
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidOrder(format!(
            "expected {n} generators, got {}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &i in perm {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidOrder(format!(
                "{perm:?} is not a permutation of 0..{n}"
            )));
        }
    }
    Ok(())
}

/// Output of [`parse_ideal`]: the ideal plus any generators dropped by
/// minimization.
#[derive(Debug, Clone)]
pub struct ParsedIdeal {
    pub ideal: MonomialIdeal,
    pub removed: Vec<Monomial>,
}

/// Parses the ideal file format:
///
/// ```text
/// # comment
/// vars: w x y z
/// gens: y*z x*y w*x
///   w*z
/// ```
pub fn parse_ideal(text: &str) -> Result<ParsedIdeal> {
    let mut ctx: Option<Arc<VariableContext>> = None;
    let mut gens: Option<Vec<Monomial>> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |e: Error| match e {
            Error::Parse { message, .. } => Error::Parse {
                line: line_no,
                message,
            },
            other => other,
        };
        if let Some(rest) = line.strip_prefix("vars:") {
            if ctx.is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "duplicate `vars:` line".into(),
                });
            }
            ctx = Some(VariableContext::new(rest.split_whitespace())?);
            continue;
        }
        let Some(c) = ctx.as_ref() else {
            return Err(Error::Parse {
                line: line_no,
                message: "expected `vars:` line first".into(),
            });
        };
        let tokens = if let Some(rest) = line.strip_prefix("gens:") {
            if gens.is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "duplicate `gens:` line".into(),
                });
            }
            gens = Some(Vec::new());
            rest
        } else if gens.is_some() {
            line
        } else {
            return Err(Error::Parse {
                line: line_no,
                message: "expected `gens:` line".into(),
            });
        };
        let list = gens.as_mut().expect("gens initialised above");
        for token in tokens.split_whitespace() {
            list.push(Monomial::parse(c, token).map_err(at)?);
        }
    }

    let ctx = ctx.ok_or(Error::Parse {
        line: 0,
        message: "missing `vars:` line".into(),
    })?;
    let gens = gens.ok_or(Error::Parse {
        line: 0,
        message: "missing `gens:` line".into(),
    })?;
    let (ideal, removed) = MonomialIdeal::minimized(&ctx, gens)?;
    Ok(ParsedIdeal { ideal, removed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(names: &str) -> Arc<VariableContext> {
        VariableContext::new(names.split_whitespace()).unwrap()
    }

    fn m(c: &Arc<VariableContext>, s: &str) -> Monomial {
        Monomial::parse(c, s).unwrap()
    }

    #[test]
    fn lcm_examples() {
        let c = VariableContext::indexed("x", 8).unwrap();
        let m1 = m(&c, "x1*x2*x3*x4");
        let m4 = m(&c, "x1*x2*x7");
        assert_eq!(m1.lcm(&m1).unwrap(), m1);
        assert_eq!(m1.lcm(&m4).unwrap(), m(&c, "x1*x2*x3*x4*x7"));
        assert_eq!(Monomial::one(&c).lcm(&m4).unwrap(), m4);

        let d = ctx("x y");
        assert_eq!(
            m(&d, "x^2*y").lcm(&m(&d, "x*y^3")).unwrap(),
            m(&d, "x^2*y^3")
        );
    }

    #[test]
    fn divides_examples() {
        let c = VariableContext::indexed("x", 8).unwrap();
        assert!(m(&c, "x7*x8").divides(&m(&c, "x1*x2*x3*x4*x7*x8")).unwrap());
        let a = m(&c, "x1*x2*x3");
        assert!(a.divides(&a).unwrap());
        assert!(!m(&c, "x2*x3*x8").divides(&m(&c, "x1*x2*x3*x4*x7")).unwrap());
        let d = ctx("x y");
        assert!(!m(&d, "x^2").divides(&m(&d, "x*y")).unwrap());
        assert!(m(&d, "x^2").divides(&m(&d, "x^3*y")).unwrap());
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = m(&ctx("x y"), "x");
        let b = m(&ctx("x z"), "x");
        assert_eq!(a.lcm(&b), Err(Error::ContextMismatch));
        assert_eq!(a.divides(&b), Err(Error::ContextMismatch));
    }

    #[test]
    fn minimize_examples() {
        let c = ctx("w x y z");
        let r = minimize_generators(&[m(&c, "x*y"), m(&c, "x*y^2")]).unwrap();
        assert_eq!(r.generators, vec![m(&c, "x*y")]);
        assert!(r.changed());

        let gens: Vec<_> = ["y*z", "x*y", "w*x", "w*z"]
            .iter()
            .map(|s| m(&c, s))
            .collect();
        let r = minimize_generators(&gens).unwrap();
        assert_eq!(r.generators, gens);
        assert!(!r.changed());

        let r = minimize_generators(&[m(&c, "x*y"), m(&c, "x*y")]).unwrap();
        assert_eq!(r.generators, vec![m(&c, "x*y")]);
        assert!(r.changed());

        assert_eq!(
            minimize_generators(&[m(&c, "x"), Monomial::one(&c)]),
            Err(Error::UnitGenerator)
        );
    }

    #[test]
    fn parse_running_example() {
        let p = parse_ideal("vars: w x y z\ngens: y*z x*y w*x w*z").unwrap();
        let names: Vec<String> = p.ideal.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(names, ["y*z", "x*y", "w*x", "w*z"]);
        assert!(p.removed.is_empty());
    }

    #[test]
    fn parse_zero_ideal_and_powers() {
        let p = parse_ideal("vars: x\ngens:").unwrap();
        assert!(p.ideal.is_empty());

        let p = parse_ideal("vars: x y\ngens: x^2*y x*y^2").unwrap();
        assert_eq!(p.ideal.len(), 2);
        assert!(p.removed.is_empty());
        assert_eq!(p.ideal.generators()[0].exponents(), &[2, 1]);
    }

    #[test]
    fn parse_comments_and_continuation_lines() {
        let text = "# running example\n\nvars: w x y z\ngens: y*z\n  x*y w*x\n# trailing\nw*z\n";
        let p = parse_ideal(text).unwrap();
        assert_eq!(p.ideal.len(), 4);
        assert_eq!(p.ideal.generators()[3].to_string(), "w*z");
    }

    #[test]
    fn parse_minimizes_with_report() {
        let p = parse_ideal("vars: x y\ngens: x*y x*y^2 x").unwrap();
        let names: Vec<String> = p.ideal.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(names, ["x"]);
        assert_eq!(p.removed.len(), 2);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_ideal("vars: x y\ngens: x*q"),
            Err(Error::UnknownVariable(v)) if v == "q"
        ));
        assert!(matches!(
            parse_ideal("vars: x y\ngens: x^a"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_ideal("vars: x y\ngens: x^0"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_ideal("vars: x\ngens: x^2147483648"),
            Err(Error::ExponentTooLarge(_))
        ));
        assert!(parse_ideal("vars: x x\ngens: x").is_err());
        assert!(parse_ideal("vars: 1x\ngens:").is_err());
        assert!(parse_ideal("gens: x").is_err());
        assert!(parse_ideal("vars: x y\ngens: 1").is_err());
    }

    #[test]
    fn canonical_printing() {
        let c = ctx("w x y z");
        assert_eq!(m(&c, "y*x^1*w^3").to_string(), "w^3*x*y");
        assert_eq!(Monomial::one(&c).to_string(), "1");
        let p = parse_ideal("vars: w x y z\ngens: y*z x*y w*x w*z").unwrap();
        assert_eq!(
            p.ideal.to_file_string(),
            "vars: w x y z\ngens: y*z x*y w*x w*z\n"
        );
        assert_eq!(p.ideal.to_string(), "(y*z, x*y, w*x, w*z)");
    }

    #[test]
    fn order_from_names() {
        let p = parse_ideal("vars: w x y z\ngens: y*z x*y w*x w*z").unwrap();
        assert_eq!(
            p.ideal.order_from_names("w*z, y*z,x*y,w*x").unwrap(),
            [3, 0, 1, 2]
        );
        assert!(p.ideal.order_from_names("w*z,y*z").is_err());
        assert!(p.ideal.order_from_names("w*z,w*z,x*y,w*x").is_err());
        assert!(p.ideal.order_from_names("z*y,x*y,w*x,w*z").is_err());
    }

    #[test]
    fn new_rejects_non_minimal() {
        let c = ctx("x y");
        assert!(MonomialIdeal::new(&c, vec![m(&c, "x"), m(&c, "x*y")]).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn exps() -> impl Strategy<Value = Vec<u32>> {
            prop::collection::vec(0u32..4, 4)
        }

        proptest! {
            #[test]
            fn lcm_laws(a in exps(), b in exps(), c in exps()) {
                let ctx = ctx("w x y z");
                let (a, b, c) = (
                    Monomial::new(&ctx, a).unwrap(),
                    Monomial::new(&ctx, b).unwrap(),
                    Monomial::new(&ctx, c).unwrap(),
                );
                let ab = a.lcm(&b).unwrap();
                prop_assert_eq!(ab.clone(), b.lcm(&a).unwrap());
                prop_assert_eq!(ab.lcm(&c).unwrap(), a.lcm(&b.lcm(&c).unwrap()).unwrap());
                prop_assert_eq!(a.lcm(&a).unwrap(), a.clone());
                prop_assert!(a.divides(&ab).unwrap());
                prop_assert!(b.divides(&ab).unwrap());
            }

            #[test]
            fn squarefree_fast_path_agrees(a in 0u64..16, b in 0u64..16) {
                let ctx = ctx("w x y z");
                let ma = Monomial::from_support(&ctx, a).unwrap();
                let mb = Monomial::from_support(&ctx, b).unwrap();
                let slow = |m: &Monomial| Monomial { support: None, ..m.clone() };
                let (fast, reference) = (ma.lcm(&mb).unwrap(), slow(&ma).lcm(&slow(&mb)).unwrap());
                prop_assert_eq!(fast.exponents(), reference.exponents());
                prop_assert_eq!(ma.divides(&mb).unwrap(), slow(&ma).divides(&slow(&mb)).unwrap());
            }

            #[test]
            fn minimized_is_antichain(list in prop::collection::vec(exps(), 0..8)) {
                let ctx = ctx("w x y z");
                let monos: Vec<Monomial> = list
                    .into_iter()
                    .map(|e| Monomial::new(&ctx, e).unwrap())
                    .filter(|m| !m.is_one())
                    .collect();
                let r = minimize_generators(&monos).unwrap();
                for (i, g) in r.generators.iter().enumerate() {
                    for (j, h) in r.generators.iter().enumerate() {
                        if i != j {
                            prop_assert!(!g.divides(h).unwrap());
                        }
                    }
                }
            }

            #[test]
            fn file_round_trip(list in prop::collection::vec(exps(), 0..6)) {
                let ctx = ctx("w x y z");
                let monos: Vec<Monomial> = list
                    .into_iter()
                    .map(|e| Monomial::new(&ctx, e).unwrap())
                    .filter(|m| !m.is_one())
                    .collect();
                let (ideal, _) = MonomialIdeal::minimized(&ctx, monos).unwrap();
                let text = ideal.to_file_string();
                let again = parse_ideal(&text).unwrap();
                prop_assert!(again.removed.is_empty());
                prop_assert_eq!(&again.ideal, &ideal);
                prop_assert_eq!(again.ideal.to_file_string(), text);
            }
        }
    }
}
