use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use num_rational::BigRational;

use super::monomial::{enumerate, Monomial};
use crate::error::{Error, ParseError, Position, Result};
use crate::expr::{Algebra, Expression};
use crate::scalar::ParamScalar;
use crate::text::{Document, Entry};

/// Sparse polynomial over the generators, not reduced.
pub type RawPolynomial = BTreeMap<Monomial, ParamScalar>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Monomial,
    pub rhs: Vec<(Monomial, ParamScalar)>,
}

/// One way of rewriting a monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reducer {
    /// The monomial lies above the degree bound and vanishes.
    Truncate,
    Zero(usize),
    Rule(usize),
}

/// A finite-dimensional graded-commutative ring given by generators of even
/// degree, monomial rewrite rules, zero monomials and top-degree integrals.
///
/// Every monomial up to the ambient degree has its normal form tabulated at
/// construction; construction fails unless the rewrite system terminates and
/// is confluent on that range.
#[derive(Debug)]
pub struct RingPresentation {
    params: Vec<String>,
    generators: Vec<Generator>,
    names: Vec<String>,
    weights: Vec<u32>,
    rules: Vec<Rule>,
    zeros: Vec<Monomial>,
    fiber: Option<usize>,
    fiber_supported: Vec<usize>,
    integrals: BTreeMap<Monomial, BigRational>,
    top_degree: u32,
    table: HashMap<Monomial, Vec<(Monomial, ParamScalar)>>,
}

/// Unvalidated presentation data; positions, when present, are used for
/// diagnostics.
#[derive(Debug, Clone, Default)]
pub struct PresentationBuilder {
    params: Vec<Entry>,
    generators: Vec<(Entry, u32)>,
    rules: Vec<(Entry, Entry)>,
    zeros: Vec<Entry>,
    fiber: Option<Entry>,
    fiber_supported: Vec<Entry>,
    integrals: Vec<(Entry, Entry)>,
    top_degree: u32,
}

fn bare(text: &str) -> Entry {
    Entry {
        text: text.to_string(),
        position: Position::new(1, 1),
    }
}

fn at(entry: &Entry, message: impl Into<String>) -> Error {
    ParseError::new(entry.position, message).into()
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PresentationBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn param(mut self, name: &str) -> Self {
        self.params.push(bare(name));
        self
    }

    pub fn generator(mut self, name: &str, degree: u32) -> Self {
        self.generators.push((bare(name), degree));
        self
    }

    pub fn rule(mut self, lhs: &str, rhs: &str) -> Self {
        self.rules.push((bare(lhs), bare(rhs)));
        self
    }

    pub fn zero(mut self, monomial: &str) -> Self {
        self.zeros.push(bare(monomial));
        self
    }

    pub fn fiber(mut self, name: &str) -> Self {
        self.fiber = Some(bare(name));
        self
    }

    pub fn fiber_supported(mut self, name: &str) -> Self {
        self.fiber_supported.push(bare(name));
        self
    }

    pub fn integral(mut self, monomial: &str, value: &str) -> Self {
        self.integrals.push((bare(monomial), bare(value)));
        self
    }

    pub fn top_degree(mut self, degree: u32) -> Self {
        self.top_degree = degree;
        self
    }

    pub fn from_document(doc: &Document) -> Result<Self> {
        let mut b = PresentationBuilder::new();
        b.params = doc.entries("params").to_vec();
        for e in doc.entries("generators") {
            let (name, deg) = e.text.split_once('=').ok_or_else(|| {
                ParseError::new(e.position, "malformed generator").expected("`name=degree`")
            })?;
            let deg_text = deg.trim();
            let degree: u32 = deg_text.parse().map_err(|_| {
                ParseError::new(e.position, format!("invalid degree `{deg_text}`"))
                    .expected("a positive even integer")
            })?;
            b.generators.push((
                Entry {
                    text: name.trim().to_string(),
                    position: e.position,
                },
                degree,
            ));
        }
        for e in doc.entries("rules") {
            let (lhs, rhs) = split_entry(e, "->")?;
            b.rules.push((lhs, rhs));
        }
        b.zeros = doc.entries("zeros").to_vec();
        b.fiber = doc.single("fiber")?.cloned();
        b.fiber_supported = doc.entries("fiber_supported").to_vec();
        for e in doc.entries("integrals") {
            let (m, v) = split_entry(e, "=")?;
            b.integrals.push((m, v));
        }
        b.top_degree = match doc.single("top_degree")? {
            Some(e) => e.text.parse().map_err(|_| {
                ParseError::new(e.position, format!("invalid top degree `{}`", e.text))
                    .expected("a nonnegative even integer")
            })?,
            None => {
                return Err(
                    ParseError::new(Position::new(1, 1), "missing section `top_degree`")
                        .expected("`top_degree: N`")
                        .into(),
                )
            }
        };
        Ok(b)
    }

    pub fn build(self) -> Result<Arc<RingPresentation>> {
        RingPresentation::from_builder(self).map(Arc::new)
    }
}

/// Splits `a SEP b` into two entries with their own positions.
fn split_entry(e: &Entry, sep: &str) -> Result<(Entry, Entry)> {
    let i = e.text.find(sep).ok_or_else(|| {
        ParseError::new(e.position, format!("missing `{sep}`")).expected(format!("`lhs {sep} rhs`"))
    })?;
    let left = &e.text[..i];
    let right = &e.text[i + sep.len()..];
    let lead = right.len() - right.trim_start().len();
    let col = e.position.column + e.text[..i + sep.len() + lead].chars().count();
    Ok((
        Entry {
            text: left.trim().to_string(),
            position: e.position,
        },
        Entry {
            text: right.trim().to_string(),
            position: Position::new(e.position.line, col),
        },
    ))
}

/// Evaluates expressions to unreduced polynomials over the generators.
struct RawAlgebra<'a> {
    names: &'a [String],
    params: &'a [String],
}

impl Algebra for RawAlgebra<'_> {
    type Value = RawPolynomial;

    fn constant(&self, q: BigRational) -> RawPolynomial {
        let mut p = RawPolynomial::new();
        let s = ParamScalar::from(q);
        if !s.is_zero() {
            p.insert(Monomial::one(self.names.len()), s);
        }
        p
    }

    fn ident(&self, name: &str) -> Result<RawPolynomial> {
        let mut p = RawPolynomial::new();
        if let Some(i) = self.names.iter().position(|n| n == name) {
            p.insert(Monomial::generator(self.names.len(), i), ParamScalar::one());
        } else if self.params.iter().any(|n| n == name) {
            p.insert(Monomial::one(self.names.len()), ParamScalar::param(name));
        } else {
            return Err(Error::UnknownIdentifier(name.to_string()));
        }
        Ok(p)
    }

    fn add(&self, a: &RawPolynomial, b: &RawPolynomial) -> Result<RawPolynomial> {
        let mut out = a.clone();
        for (m, c) in b {
            add_into(&mut out, m.clone(), c);
        }
        Ok(out)
    }

    fn neg(&self, a: &RawPolynomial) -> RawPolynomial {
        a.iter().map(|(m, c)| (m.clone(), -c)).collect()
    }

    fn mul(&self, a: &RawPolynomial, b: &RawPolynomial) -> Result<RawPolynomial> {
        let mut out = RawPolynomial::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                add_into(&mut out, ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    fn as_constant(&self, a: &RawPolynomial) -> Option<BigRational> {
        match a.len() {
            0 => Some(BigRational::from_integer(0.into())),
            1 => {
                let (m, c) = a.iter().next().unwrap();
                if m.is_one() {
                    c.as_constant()
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

pub(crate) fn add_into(p: &mut RawPolynomial, m: Monomial, c: &ParamScalar) {
    if c.is_zero() {
        return;
    }
    match p.get_mut(&m) {
        Some(existing) => {
            *existing += c;
            if existing.is_zero() {
                p.remove(&m);
            }
        }
        None => {
            p.insert(m, c.clone());
        }
    }
}

impl RingPresentation {
    fn from_builder(b: PresentationBuilder) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        let mut generators = Vec::new();
        for (e, degree) in &b.generators {
            if !is_identifier(&e.text) {
                return Err(at(e, format!("invalid generator name `{}`", e.text)));
            }
            if names.contains(&e.text) {
                return Err(at(e, format!("duplicate generator `{}`", e.text)));
            }
            if *degree == 0 || degree % 2 != 0 {
                return Err(Error::InvalidPresentation(format!(
                    "generator `{}` has degree {degree}; degrees must be even and positive",
                    e.text
                )));
            }
            names.push(e.text.clone());
            generators.push(Generator {
                name: e.text.clone(),
                degree: *degree,
            });
        }
        let mut params: Vec<String> = Vec::new();
        for e in &b.params {
            if !is_identifier(&e.text) {
                return Err(at(e, format!("invalid parameter name `{}`", e.text)));
            }
            if params.contains(&e.text) || names.contains(&e.text) {
                return Err(at(
                    e,
                    format!("parameter `{}` clashes with another name", e.text),
                ));
            }
            params.push(e.text.clone());
        }
        if !b.top_degree.is_multiple_of(2) {
            return Err(Error::InvalidPresentation(format!(
                "top degree {} is odd",
                b.top_degree
            )));
        }
        let weights: Vec<u32> = generators.iter().map(|g| g.degree).collect();
        let alg = RawAlgebra {
            names: &names,
            params: &params,
        };
        let monomial = |e: &Entry| -> Result<Monomial> {
            let expr = Expression::parse_at(&e.text, e.position)?;
            let factors = expr
                .as_monomial()
                .ok_or_else(|| at(e, format!("`{}` is not a monomial", e.text)))?;
            let mut exps = vec![0u32; names.len()];
            for (name, exp) in factors {
                let i = names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| at(e, format!("unknown generator `{name}`")))?;
                exps[i] += exp;
            }
            Ok(Monomial::from_exponents(exps))
        };
        let generator_index = |e: &Entry| -> Result<usize> {
            names
                .iter()
                .position(|n| *n == e.text)
                .ok_or_else(|| at(e, format!("unknown generator `{}`", e.text)))
        };

        let mut rules = Vec::new();
        for (le, re) in &b.rules {
            let lhs = monomial(le)?;
            if lhs.is_one() {
                return Err(at(le, "rule left side must be a nonconstant monomial"));
            }
            let rhs_expr = Expression::parse_at(&re.text, re.position)?;
            let rhs = rhs_expr.evaluate(&alg).map_err(|err| match err {
                Error::UnknownIdentifier(n) => at(re, format!("unknown identifier `{n}`")),
                other => other,
            })?;
            let ldeg = lhs.degree(&weights);
            for m in rhs.keys() {
                let rdeg = m.degree(&weights);
                if rdeg != ldeg {
                    return Err(Error::InhomogeneousRule {
                        rule: format!("{} -> {}", le.text, re.text),
                        lhs: ldeg,
                        rhs: rdeg,
                    });
                }
            }
            rules.push(Rule {
                lhs,
                rhs: rhs.into_iter().collect(),
            });
        }
        let mut zeros = Vec::new();
        for e in &b.zeros {
            let m = monomial(e)?;
            if m.is_one() {
                return Err(at(e, "the unit cannot be declared zero"));
            }
            zeros.push(m);
        }
        let fiber = match &b.fiber {
            Some(e) => {
                let i = generator_index(e)?;
                if generators[i].degree != 2 {
                    return Err(at(e, "the fiber class must have degree 2"));
                }
                Some(i)
            }
            None => None,
        };
        let mut fiber_supported = Vec::new();
        for e in &b.fiber_supported {
            let i = generator_index(e)?;
            if Some(i) == fiber {
                return Err(at(e, "the fiber class is listed as fiber-supported"));
            }
            if !fiber_supported.contains(&i) {
                fiber_supported.push(i);
            }
        }

        let mut ring = RingPresentation {
            params: params.clone(),
            generators,
            names: names.clone(),
            weights,
            rules,
            zeros,
            fiber,
            fiber_supported,
            integrals: BTreeMap::new(),
            top_degree: b.top_degree,
            table: HashMap::new(),
        };
        ring.check_termination()?;
        ring.build_table()?;
        ring.check_confluence()?;
        ring.check_fiber_relations()?;

        let scalar_params = ring.params.clone();
        for (me, ve) in &b.integrals {
            let m = monomial(me)?;
            let mono = ring.format_monomial(&m);
            if m.degree(&ring.weights) != ring.top_degree {
                return Err(Error::InvalidIntegral {
                    monomial: mono,
                    reason: format!(
                        "degree {} differs from top degree {}",
                        m.degree(&ring.weights),
                        ring.top_degree
                    ),
                });
            }
            if ring.table.get(&m) != Some(&vec![(m.clone(), ParamScalar::one())]) {
                return Err(Error::InvalidIntegral {
                    monomial: mono,
                    reason: "not in normal form".into(),
                });
            }
            if !ring.is_base(&m) {
                return Err(Error::InvalidIntegral {
                    monomial: mono,
                    reason: "involves curve classes".into(),
                });
            }
            let value = Expression::parse_at(&ve.text, ve.position)?
                .evaluate(&crate::expr::ScalarAlgebra {
                    params: &scalar_params,
                })?
                .as_constant()
                .ok_or_else(|| at(ve, "integral value must be a rational number"))?;
            if ring.integrals.insert(m, value).is_some() {
                return Err(Error::InvalidIntegral {
                    monomial: mono,
                    reason: "declared twice".into(),
                });
            }
        }
        Ok(ring)
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn zeros(&self) -> &[Monomial] {
        &self.zeros
    }

    pub fn fiber(&self) -> Option<usize> {
        self.fiber
    }

    pub fn fiber_supported(&self) -> &[usize] {
        &self.fiber_supported
    }

    pub fn integrals(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.integrals
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    /// Degree bound for elements: with a fiber class the ring models
    /// curve × base, so curve-bearing classes reach two degrees higher.
    pub fn ambient_degree(&self) -> u32 {
        if self.fiber.is_some() {
            self.top_degree + 2
        } else {
            self.top_degree
        }
    }

    /// Number of Chern components carried by characters over this ring.
    pub fn max_component(&self) -> usize {
        (self.ambient_degree() / 2) as usize
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        m.degree(&self.weights)
    }

    /// True if `m` involves neither the fiber class nor a fiber-supported generator.
    pub fn is_base(&self, m: &Monomial) -> bool {
        self.fiber.is_none_or(|f| !m.contains(f))
            && self.fiber_supported.iter().all(|&i| !m.contains(i))
    }

    pub fn monomial(&self, factors: &[(&str, u32)]) -> Result<Monomial> {
        let mut exps = vec![0u32; self.names.len()];
        for (name, e) in factors {
            exps[self.generator_index(name)?] += e;
        }
        Ok(Monomial::from_exponents(exps))
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.names.len())
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        m.format(&self.names)
    }

    pub fn describe_reducer(&self, r: Reducer) -> String {
        match r {
            Reducer::Truncate => "degree truncation".to_string(),
            Reducer::Zero(i) => format!("{} = 0", self.format_monomial(&self.zeros[i])),
            Reducer::Rule(i) => {
                let rule = &self.rules[i];
                let rhs: Vec<String> = rule
                    .rhs
                    .iter()
                    .map(|(m, c)| format!("({c})*{}", self.format_monomial(m)))
                    .collect();
                let rhs = if rhs.is_empty() {
                    "0".to_string()
                } else {
                    rhs.join(" + ")
                };
                format!("{} -> {rhs}", self.format_monomial(&rule.lhs))
            }
        }
    }

    fn exceeds_degree(&self, m: &Monomial) -> bool {
        let d = self.degree(m);
        d > self.ambient_degree() || (d > self.top_degree && self.is_base(m))
    }

    /// Every rewrite step that applies to `m`, in canonical priority order.
    pub fn applicable_reducers(&self, m: &Monomial) -> Vec<Reducer> {
        let mut out = Vec::new();
        if self.exceeds_degree(m) {
            out.push(Reducer::Truncate);
        }
        for (i, z) in self.zeros.iter().enumerate() {
            if z.divides(m) {
                out.push(Reducer::Zero(i));
            }
        }
        for (i, r) in self.rules.iter().enumerate() {
            if r.lhs.divides(m) {
                out.push(Reducer::Rule(i));
            }
        }
        out
    }

    /// The one-step reduct of `m` under `r`, not further reduced.
    pub fn apply_reducer(&self, m: &Monomial, r: Reducer) -> Vec<(Monomial, ParamScalar)> {
        match r {
            Reducer::Truncate | Reducer::Zero(_) => Vec::new(),
            Reducer::Rule(i) => {
                let rule = &self.rules[i];
                let q = rule.lhs.quotient_of(m);
                rule.rhs
                    .iter()
                    .map(|(t, c)| (t.mul(&q), c.clone()))
                    .collect()
            }
        }
    }

    fn check_termination(&self) -> Result<()> {
        // Reduction graph on monomials up to the ambient degree must be acyclic.
        let all = enumerate(&self.weights, self.ambient_degree());
        let mut state: HashMap<Monomial, u8> = HashMap::new();
        for start in &all {
            if state.contains_key(start) {
                continue;
            }
            let mut stack: Vec<(Monomial, Vec<Monomial>)> =
                vec![(start.clone(), self.successors(start))];
            state.insert(start.clone(), 1);
            while let Some((node, succ)) = stack.last_mut() {
                match succ.pop() {
                    Some(next) => match state.get(&next) {
                        Some(1) => {
                            return Err(Error::NonTerminating {
                                monomial: self.format_monomial(&next),
                            })
                        }
                        Some(_) => {}
                        None => {
                            state.insert(next.clone(), 1);
                            let s = self.successors(&next);
                            stack.push((next, s));
                        }
                    },
                    None => {
                        state.insert(node.clone(), 2);
                        stack.pop();
                    }
                }
            }
        }
        Ok(())
    }

    fn successors(&self, m: &Monomial) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = self
            .applicable_reducers(m)
            .into_iter()
            .flat_map(|r| self.apply_reducer(m, r).into_iter().map(|(t, _)| t))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn build_table(&mut self) -> Result<()> {
        let all = enumerate(&self.weights, self.ambient_degree());
        let mut table = HashMap::with_capacity(all.len());
        for m in &all {
            self.nf_memo(m, &mut table, &mut HashSet::new())?;
        }
        self.table = table;
        Ok(())
    }

    fn nf_memo(
        &self,
        m: &Monomial,
        table: &mut HashMap<Monomial, Vec<(Monomial, ParamScalar)>>,
        active: &mut HashSet<Monomial>,
    ) -> Result<Vec<(Monomial, ParamScalar)>> {
        if let Some(v) = table.get(m) {
            return Ok(v.clone());
        }
        if !active.insert(m.clone()) {
            return Err(Error::NonTerminating {
                monomial: self.format_monomial(m),
            });
        }
        let result = match self.applicable_reducers(m).first() {
            None => vec![(m.clone(), ParamScalar::one())],
            Some(&r) => {
                let mut acc = RawPolynomial::new();
                for (t, c) in self.apply_reducer(m, r) {
                    for (u, d) in self.nf_memo(&t, table, active)? {
                        add_into(&mut acc, u, &(&c * &d));
                    }
                }
                acc.into_iter().collect()
            }
        };
        active.remove(m);
        table.insert(m.clone(), result.clone());
        Ok(result)
    }

    fn reduct_nf(&self, m: &Monomial, r: Reducer) -> RawPolynomial {
        let mut acc = RawPolynomial::new();
        for (t, c) in self.apply_reducer(m, r) {
            for (u, d) in self.lookup(&t) {
                add_into(&mut acc, u.clone(), &(&c * d));
            }
        }
        acc
    }

    fn check_confluence(&self) -> Result<()> {
        let mut monomials: Vec<&Monomial> = self.table.keys().collect();
        monomials.sort();
        for m in monomials {
            let reducers = self.applicable_reducers(m);
            if reducers.len() < 2 {
                continue;
            }
            let canonical = reducers[0];
            let expected = self.reduct_nf(m, canonical);
            for &other in &reducers[1..] {
                let got = self.reduct_nf(m, other);
                if got != expected {
                    return Err(Error::NonConfluent {
                        monomial: self.format_monomial(m),
                        first: self.describe_reducer(canonical),
                        first_nf: self.format_raw(&expected),
                        second: self.describe_reducer(other),
                        second_nf: self.format_raw(&got),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_fiber_relations(&self) -> Result<()> {
        if let Some(f) = self.fiber {
            let mut sq = self
                .one_monomial()
                .mul(&Monomial::generator(self.names.len(), f));
            sq = sq.mul(&Monomial::generator(self.names.len(), f));
            if !self.lookup(&sq).is_empty() {
                return Err(Error::InvalidPresentation(format!(
                    "the square of the fiber class `{}` must reduce to zero",
                    self.names[f]
                )));
            }
        }
        // Restriction to a point must respect every rule.
        for (i, rule) in self.rules.iter().enumerate() {
            if !self.is_base(&rule.lhs) && rule.rhs.iter().any(|(m, _)| self.is_base(m)) {
                return Err(Error::InvalidPresentation(format!(
                    "rule `{}` is incompatible with restriction to a point",
                    self.describe_reducer(Reducer::Rule(i))
                )));
            }
        }
        Ok(())
    }

    /// Normal form of a monomial; empty for zero.
    pub fn lookup(&self, m: &Monomial) -> &[(Monomial, ParamScalar)] {
        self.table.get(m).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Table-driven normal form of a formal sum.
    pub fn normal_form_raw<I>(&self, raw: I) -> RawPolynomial
    where
        I: IntoIterator<Item = (Monomial, ParamScalar)>,
    {
        let mut acc = RawPolynomial::new();
        for (m, c) in raw {
            for (u, d) in self.lookup(&m) {
                add_into(&mut acc, u.clone(), &(&c * d));
            }
        }
        acc
    }

    /// Reduces a formal sum by applying one rewrite step at a time, letting
    /// `choose(k)` pick which of the `k` available steps to take. Independent
    /// of the normal-form table.
    pub fn reduce_with<I, F>(&self, raw: I, mut choose: F) -> RawPolynomial
    where
        I: IntoIterator<Item = (Monomial, ParamScalar)>,
        F: FnMut(usize) -> usize,
    {
        let mut current = RawPolynomial::new();
        for (m, c) in raw {
            add_into(&mut current, m, &c);
        }
        loop {
            let options: Vec<(Monomial, Reducer)> = current
                .keys()
                .flat_map(|m| {
                    self.applicable_reducers(m)
                        .into_iter()
                        .map(move |r| (m.clone(), r))
                })
                .collect();
            if options.is_empty() {
                return current;
            }
            let (m, r) = options[choose(options.len()) % options.len()].clone();
            let c = current.remove(&m).expect("term present");
            for (t, d) in self.apply_reducer(&m, r) {
                add_into(&mut current, t, &(&c * &d));
            }
        }
    }

    pub fn format_raw(&self, p: &RawPolynomial) -> String {
        if p.is_empty() {
            return "0".into();
        }
        p.iter()
            .map(|(m, c)| format!("({c})*{}", self.format_monomial(m)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Monomials of degree `degree` that form a basis of that graded piece.
    pub fn basis(&self, degree: u32) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = self
            .table
            .iter()
            .filter(|(m, nf)| {
                self.degree(m) == degree && nf.len() == 1 && nf[0].0 == **m && nf[0].1.is_one()
            })
            .map(|(m, _)| m.clone())
            .collect();
        out.sort_by(|a, b| b.grlex_cmp(a, &self.weights));
        out
    }

    pub fn evaluate_raw(&self, expr: &Expression) -> Result<RawPolynomial> {
        expr.evaluate(&RawAlgebra {
            names: &self.names,
            params: &self.params,
        })
    }

    pub(crate) fn integral_value(&self, m: &Monomial) -> Option<&BigRational> {
        self.integrals.get(m)
    }
}
