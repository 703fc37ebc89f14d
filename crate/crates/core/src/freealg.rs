//! Noncommutative polynomials and bounded-degree diamond-lemma rewriting.
//!
//! Words are ordered degree-lexicographically (length first, then
//! lexicographically by generator id, which is the generator table order).
//! A relation is oriented into a rule `lead word → rest` by solving for its
//! deglex-leading word; the order is multiplication-compatible and
//! well-founded, so normal forms always terminate.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::scalar::{normalize_content, Scalar, ScalarError};

pub type GenId = u16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    DuplicateGenerator(String),
    UnknownGenerator(String),
    /// `apply_hom` met a generator outside the map's domain.
    UnmappedGenerator(String),
    /// A relation reduced to a nonzero constant: the ideal is the whole algebra.
    TrivialIdeal,
    /// Completion would exceed the configured maximum number of rules.
    BudgetExceeded { rules: usize },
    Scalar(ScalarError),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::DuplicateGenerator(g) => write!(f, "duplicate generator `{g}`"),
            AlgebraError::UnknownGenerator(g) => write!(f, "unknown generator `{g}`"),
            AlgebraError::UnmappedGenerator(g) => write!(f, "generator `{g}` has no image"),
            AlgebraError::TrivialIdeal => write!(f, "relations generate the whole algebra"),
            AlgebraError::BudgetExceeded { rules } => {
                write!(f, "completion budget exceeded ({rules} rules)")
            }
            AlgebraError::Scalar(e) => write!(f, "{e}"),
        }
    }
}

impl From<ScalarError> for AlgebraError {
    fn from(e: ScalarError) -> Self {
        AlgebraError::Scalar(e)
    }
}

/// Ordered generator names with positive integer weights (default 1).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GeneratorTable {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl GeneratorTable {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, AlgebraError> {
        let mut t = GeneratorTable::default();
        for n in names {
            t.push(n.as_ref())?;
        }
        Ok(t)
    }

    pub fn push(&mut self, name: &str) -> Result<GenId, AlgebraError> {
        self.push_weighted(name, 1)
    }

    pub fn push_weighted(&mut self, name: &str, weight: u32) -> Result<GenId, AlgebraError> {
        if self.id(name).is_some() {
            return Err(AlgebraError::DuplicateGenerator(name.to_string()));
        }
        self.names.push(name.to_string());
        self.weights.push(weight.max(1));
        Ok((self.names.len() - 1) as GenId)
    }

    pub fn set_weight(&mut self, id: GenId, weight: u32) {
        self.weights[id as usize] = weight.max(1);
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, id: GenId) -> &str {
        &self.names[id as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weight(&self, id: GenId) -> u32 {
        self.weights[id as usize]
    }

    pub fn id(&self, name: &str) -> Option<GenId> {
        self.names.iter().position(|n| n == name).map(|i| i as GenId)
    }

    pub fn expect_id(&self, name: &str) -> Result<GenId, AlgebraError> {
        self.id(name).ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))
    }
}

/// A word in the generators, ordered degree-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<GenId>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<GenId>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[GenId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn weight(&self, table: &GeneratorTable) -> u32 {
        self.0.iter().map(|&g| table.weight(g)).sum()
    }

    /// First position where `sub` occurs.
    pub fn find(&self, sub: &[GenId]) -> Option<usize> {
        if sub.len() > self.len() {
            return None;
        }
        (0..=self.len() - sub.len()).find(|&i| &self.0[i..i + sub.len()] == sub)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of the free algebra over [`Scalar`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(Word::empty(), c)
    }

    pub fn monomial(w: Word, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NcPoly { terms }
    }

    pub fn generator(g: GenId) -> Self {
        Self::monomial(Word(alloc::vec![g]), Scalar::one())
    }

    /// `c · w` for a word given as a slice of ids.
    pub fn term(letters: &[GenId], c: Scalar) -> Self {
        Self::monomial(Word(letters.to_vec()), c)
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(terms: I) -> Self {
        let mut p = NcPoly::zero();
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending deglex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Deglex-largest term.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn max_weight(&self, table: &GeneratorTable) -> u32 {
        self.terms.keys().map(|w| w.weight(table)).max().unwrap_or(0)
    }

    /// All words share one weight (the zero polynomial counts as homogeneous).
    pub fn is_homogeneous(&self, table: &GeneratorTable) -> bool {
        let mut it = self.terms.keys().map(|w| w.weight(table));
        match it.next() {
            None => true,
            Some(first) => it.all(|w| w == first),
        }
    }

    pub fn generators(&self) -> BTreeSet<GenId> {
        self.terms.keys().flat_map(|w| w.0.iter().copied()).collect()
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> NcPoly {
        if s.is_zero() {
            return NcPoly::zero();
        }
        NcPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect() }
    }

    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), &(c1 * c2));
            }
        }
        out
    }

    /// `left · self · right` for words.
    pub fn wrap(&self, left: &[GenId], right: &[GenId]) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| {
                    let mut v = Vec::with_capacity(left.len() + w.len() + right.len());
                    v.extend_from_slice(left);
                    v.extend_from_slice(&w.0);
                    v.extend_from_slice(right);
                    (Word(v), c.clone())
                })
                .collect(),
        }
    }

    /// Renames generators letter by letter; the map must be injective on the
    /// letters present or terms may merge (which is handled correctly).
    pub fn map_letters<F: Fn(GenId) -> GenId>(&self, f: F) -> NcPoly {
        NcPoly::from_terms(
            self.terms.iter().map(|(w, c)| (Word(w.0.iter().map(|&g| f(g)).collect()), c.clone())),
        )
    }

    /// Scalar multiple with cleared denominators, no content, and a leading
    /// (deglex-largest) coefficient whose top rational coefficient is positive.
    pub fn normalized(&self) -> NcPoly {
        if self.is_zero() {
            return NcPoly::zero();
        }
        let words: Vec<Word> = self.terms.keys().cloned().collect();
        let mut coeffs: Vec<Scalar> = self.terms.values().cloned().collect();
        let lead = coeffs.len() - 1;
        normalize_content(&mut coeffs, lead);
        NcPoly { terms: words.into_iter().zip(coeffs).collect() }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<NcPoly, AlgebraError> {
        match self.leading() {
            None => Ok(NcPoly::zero()),
            Some((_, c)) => Ok(self.scale(&c.inv()?)),
        }
    }

    pub fn display<'a>(&'a self, table: &'a GeneratorTable) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, table }
    }
}

/// Printable view of a polynomial: terms in descending deglex order,
/// explicit `*` between factors, multi-term coefficients parenthesized.
pub struct PolyDisplay<'a> {
    poly: &'a NcPoly,
    table: &'a GeneratorTable,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.poly.terms.iter().rev().enumerate() {
            let simple = c.is_single_term();
            let negative = simple && c.leading_sign() < 0;
            let mag = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let letters: Vec<&str> = w.0.iter().map(|&g| self.table.name(g)).collect();
            let body = letters.join("*");
            if w.is_empty() {
                if simple {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            } else if mag.is_one() {
                write!(f, "{body}")?;
            } else if simple {
                write!(f, "{mag}*{body}")?;
            } else {
                write!(f, "({mag})*{body}")?;
            }
        }
        Ok(())
    }
}

/// Named relation with a provenance label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub poly: NcPoly,
    pub source: String,
}

/// Named list of relations; names are unique.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RelationSet {
    items: Vec<Relation>,
}

impl RelationSet {
    pub fn new() -> Self {
        RelationSet::default()
    }

    /// Appends a relation; a repeated name is rejected.
    pub fn push(&mut self, name: &str, poly: NcPoly, source: &str) -> Result<(), AlgebraError> {
        if self.items.iter().any(|r| r.name == name) {
            return Err(AlgebraError::DuplicateGenerator(format!("relation {name}")));
        }
        self.items.push(Relation { name: name.to_string(), poly, source: source.to_string() });
        Ok(())
    }

    pub fn extend(&mut self, other: RelationSet) -> Result<(), AlgebraError> {
        for r in other.items {
            self.push(&r.name, r.poly, &r.source)?;
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Relation> {
        self.items.iter()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Relation> {
        self.items.iter().find(|r| r.name == name)
    }

    pub fn polys(&self) -> Vec<NcPoly> {
        self.items.iter().map(|r| r.poly.clone()).collect()
    }

    /// Relations whose names satisfy a predicate.
    pub fn filter<F: Fn(&Relation) -> bool>(&self, pred: F) -> RelationSet {
        RelationSet { items: self.items.iter().filter(|r| pred(r)).cloned().collect() }
    }
}

/// `lhs → rhs` with every word of `rhs` deglex-smaller than `lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: NcPoly,
}

impl RewriteRule {
    /// The relation `lhs − rhs` this rule encodes.
    pub fn relation(&self) -> NcPoly {
        NcPoly::monomial(self.lhs.clone(), Scalar::one()).sub(&self.rhs)
    }
}

/// Outcome of a bounded ideal-membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Reduced to zero: a certificate of membership.
    Member,
    /// Nonzero normal form in a graded system completed past the polynomial's
    /// weight: a certificate of non-membership.
    NotMember { residual: NcPoly },
    /// Nonzero normal form, but the completion bound does not settle it.
    Undecided { bound: usize, residual: NcPoly },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member)
    }
}

pub const DEFAULT_MAX_RULES: usize = 20_000;

/// Ordered rewrite rules over a generator table plus completion state.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    table: GeneratorTable,
    // stable ids; removed rules leave `None`
    rules: Vec<Option<RewriteRule>>,
    index: BTreeMap<Vec<GenId>, usize>,
    lhs_lens: BTreeMap<usize, usize>,
    degree_bound: usize,
    completed_to: usize,
    max_rules: usize,
}

impl RewriteSystem {
    pub fn new(table: GeneratorTable) -> Self {
        RewriteSystem {
            table,
            rules: Vec::new(),
            index: BTreeMap::new(),
            lhs_lens: BTreeMap::new(),
            degree_bound: 0,
            completed_to: 0,
            max_rules: DEFAULT_MAX_RULES,
        }
    }

    /// Orients and inter-reduces a list of relations.
    pub fn from_relations(table: GeneratorTable, relations: &[NcPoly]) -> Result<Self, AlgebraError> {
        let mut sys = RewriteSystem::new(table);
        for r in relations {
            sys.add_relation(r.clone())?;
        }
        Ok(sys)
    }

    pub fn with_max_rules(mut self, max_rules: usize) -> Self {
        self.max_rules = max_rules;
        self
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn completed_to(&self) -> usize {
        self.completed_to
    }

    pub fn rule_count(&self) -> usize {
        self.index.len()
    }

    /// Live rules sorted by left-hand side.
    pub fn rules(&self) -> Vec<&RewriteRule> {
        self.index.values().map(|&i| self.rules[i].as_ref().unwrap()).collect()
    }

    /// True when every rule is homogeneous for the table's weights.
    pub fn is_graded(&self) -> bool {
        self.rules().iter().all(|r| {
            let w = r.lhs.weight(&self.table);
            r.rhs.terms().all(|(x, _)| x.weight(&self.table) == w)
        })
    }

    fn insert_rule(&mut self, rule: RewriteRule) -> usize {
        let id = self.rules.len();
        *self.lhs_lens.entry(rule.lhs.len()).or_insert(0) += 1;
        self.index.insert(rule.lhs.0.clone(), id);
        self.rules.push(Some(rule));
        id
    }

    fn remove_rule(&mut self, id: usize) -> RewriteRule {
        let rule = self.rules[id].take().expect("live rule");
        self.index.remove(&rule.lhs.0);
        let n = self.lhs_lens.get_mut(&rule.lhs.len()).unwrap();
        *n -= 1;
        if *n == 0 {
            self.lhs_lens.remove(&rule.lhs.len());
        }
        rule
    }

    /// Leftmost occurrence of a rule left-hand side; shortest first at a position.
    fn find_match(&self, w: &[GenId]) -> Option<(usize, usize)> {
        for pos in 0..w.len() {
            for &l in self.lhs_lens.keys() {
                if pos + l > w.len() {
                    break;
                }
                if let Some(&id) = self.index.get(&w[pos..pos + l]) {
                    return Some((pos, id));
                }
            }
        }
        None
    }

    pub fn is_reducible(&self, w: &Word) -> bool {
        self.find_match(&w.0).is_some()
    }

    /// Fully reduced form: no word contains a rule left-hand side.
    pub fn normal_form(&self, p: &NcPoly) -> NcPoly {
        let mut pending = p.terms.clone();
        let mut out = BTreeMap::new();
        // Rewriting only produces deglex-smaller words, so the largest pending
        // word is final once it is irreducible.
        while let Some((w, c)) = pending.pop_last() {
            match self.find_match(&w.0) {
                None => {
                    out.insert(w, c);
                }
                Some((pos, id)) => {
                    let rule = self.rules[id].as_ref().unwrap();
                    let (left, rest) = w.0.split_at(pos);
                    let right = &rest[rule.lhs.len()..];
                    for (rw, rc) in &rule.rhs.terms {
                        let mut v = Vec::with_capacity(left.len() + rw.len() + right.len());
                        v.extend_from_slice(left);
                        v.extend_from_slice(&rw.0);
                        v.extend_from_slice(right);
                        let nw = Word(v);
                        let nc = &c * rc;
                        match pending.get_mut(&nw) {
                            Some(x) => {
                                *x += &nc;
                                if x.is_zero() {
                                    pending.remove(&nw);
                                }
                            }
                            None => {
                                pending.insert(nw, nc);
                            }
                        }
                    }
                }
            }
        }
        NcPoly { terms: out }
    }

    /// Adds a relation, keeping left-hand sides inter-reduced: rules whose
    /// left-hand side contains the new one are retracted and re-added.
    pub fn add_relation(&mut self, rel: NcPoly) -> Result<(), AlgebraError> {
        let mut work = alloc::vec![rel];
        while !work.is_empty() {
            // smallest leading word first
            work.sort_by(|a, b| b.leading().map(|t| t.0).cmp(&a.leading().map(|t| t.0)));
            let p = self.normal_form(&work.pop().unwrap());
            let Some((lead, lc)) = p.leading() else { continue };
            if lead.is_empty() {
                return Err(AlgebraError::TrivialIdeal);
            }
            let lead = lead.clone();
            let inv = lc.inv()?;
            let mut rhs = p.scale(&-inv);
            rhs.terms.remove(&lead);
            let stale: Vec<usize> = self
                .index
                .iter()
                .filter(|(l, _)| Word::new((*l).clone()).find(&lead.0).is_some())
                .map(|(_, &id)| id)
                .collect();
            for id in stale {
                let old = self.remove_rule(id);
                work.push(old.relation());
            }
            self.insert_rule(RewriteRule { lhs: lead, rhs });
            if self.index.len() > self.max_rules {
                return Err(AlgebraError::BudgetExceeded { rules: self.index.len() });
            }
        }
        Ok(())
    }

    /// Replaces every right-hand side by its normal form.
    fn reduce_right_sides(&mut self) {
        let ids: Vec<usize> = self.index.values().copied().collect();
        for id in ids {
            let rhs = self.rules[id].as_ref().unwrap().rhs.clone();
            let nf = self.normal_form(&rhs);
            self.rules[id].as_mut().unwrap().rhs = nf;
        }
    }

    /// Overlap ambiguities `u·o·v` with `lhs₁ = u·o`, `lhs₂ = o·v`, `|uov| ≤ bound`.
    fn critical_pairs(&self, bound: usize) -> Vec<(Word, usize, usize, usize)> {
        let live: Vec<(usize, &RewriteRule)> =
            self.index.values().map(|&i| (i, self.rules[i].as_ref().unwrap())).collect();
        let mut out = Vec::new();
        for &(i, r1) in &live {
            let a = &r1.lhs.0;
            for &(j, r2) in &live {
                let b = &r2.lhs.0;
                let max_k = a.len().min(b.len()) - 1;
                for k in 1..=max_k {
                    if a.len() + b.len() - k > bound {
                        continue;
                    }
                    if a[a.len() - k..] == b[..k] {
                        let mut v = a.clone();
                        v.extend_from_slice(&b[k..]);
                        out.push((Word(v), i, j, k));
                    }
                }
            }
        }
        out.sort();
        out
    }

    fn s_polynomial(&self, i: usize, j: usize, k: usize) -> NcPoly {
        let r1 = self.rules[i].as_ref().unwrap();
        let r2 = self.rules[j].as_ref().unwrap();
        let u = &r1.lhs.0[..r1.lhs.len() - k];
        let v = &r2.lhs.0[k..];
        r1.rhs.wrap(&[], v).sub(&r2.rhs.wrap(u, &[]))
    }

    /// Resolves all overlap ambiguities up to `bound`, adding the normal forms
    /// of non-resolving ones as new rules until stable. A system already
    /// completed to `bound` is returned unchanged.
    pub fn complete(&self, bound: usize) -> Result<RewriteSystem, AlgebraError> {
        if self.completed_to >= bound {
            return Ok(self.clone());
        }
        self.recomplete(bound)
    }

    /// Like [`RewriteSystem::complete`] but always re-examines every overlap.
    pub fn recomplete(&self, bound: usize) -> Result<RewriteSystem, AlgebraError> {
        let mut sys = self.clone();
        sys.degree_bound = sys.degree_bound.max(bound);
        let mut done: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
        let mut verified = false;
        loop {
            let pairs: Vec<_> =
                sys.critical_pairs(bound).into_iter().filter(|(_, i, j, k)| !done.contains(&(*i, *j, *k))).collect();
            let mut fresh = Vec::new();
            for (_, i, j, k) in pairs {
                done.insert((i, j, k));
                let s = sys.normal_form(&sys.s_polynomial(i, j, k));
                if !s.is_zero() {
                    fresh.push(s);
                }
            }
            if fresh.is_empty() {
                if verified {
                    break;
                }
                // final sweep over every surviving overlap
                sys.reduce_right_sides();
                done.clear();
                verified = true;
                continue;
            }
            verified = false;
            fresh.sort_by(|a, b| a.leading().map(|t| t.0).cmp(&b.leading().map(|t| t.0)));
            for s in fresh {
                sys.add_relation(s)?;
            }
        }
        sys.completed_to = bound;
        Ok(sys)
    }

    /// Bounded ideal membership. `Member` is a proof; a nonzero normal form is
    /// a proof of non-membership only for graded systems completed at least
    /// to the polynomial's maximal weight.
    pub fn ideal_member(&self, p: &NcPoly, bound: usize) -> Result<Membership, AlgebraError> {
        let sys = self.complete(bound)?;
        Ok(sys.membership_of(p))
    }

    /// Membership against this system as is (no further completion).
    pub fn membership_of(&self, p: &NcPoly) -> Membership {
        let residual = self.normal_form(p);
        if residual.is_zero() {
            Membership::Member
        } else if self.is_graded() && p.max_weight(&self.table) as usize <= self.completed_to {
            Membership::NotMember { residual }
        } else {
            Membership::Undecided { bound: self.completed_to, residual }
        }
    }
}

/// A tensor product of rewrite systems: legs side by side, letters of
/// different legs commuting.
#[derive(Clone, Debug)]
pub struct TensorSystem {
    pub system: RewriteSystem,
    offsets: Vec<GenId>,
    sizes: Vec<usize>,
}

impl TensorSystem {
    /// Generators of leg `k` are named `<name>_<suffix_k>` and ordered after
    /// all generators of legs `< k`. Rules: every leg's rules lifted to its
    /// copy, and `g·h → h·g` whenever `g` belongs to a later leg than `h`.
    pub fn new(legs: &[&RewriteSystem], suffixes: &[&str]) -> Result<Self, AlgebraError> {
        assert_eq!(legs.len(), suffixes.len());
        let mut table = GeneratorTable::default();
        let mut offsets = Vec::new();
        let mut sizes = Vec::new();
        for (leg, suffix) in legs.iter().zip(suffixes) {
            offsets.push(table.len() as GenId);
            sizes.push(leg.table.len());
            for (i, n) in leg.table.names.iter().enumerate() {
                table.push_weighted(&format!("{n}_{suffix}"), leg.table.weights[i])?;
            }
        }
        let mut sys = RewriteSystem::new(table);
        for (k, leg) in legs.iter().enumerate() {
            let off = offsets[k];
            for rule in leg.rules() {
                let lhs = Word(rule.lhs.0.iter().map(|g| g + off).collect());
                let rhs = rule.rhs.map_letters(|g| g + off);
                sys.insert_rule(RewriteRule { lhs, rhs });
            }
        }
        for hi in 0..legs.len() {
            for lo in 0..hi {
                for g in 0..sizes[hi] {
                    for h in 0..sizes[lo] {
                        let g = offsets[hi] + g as GenId;
                        let h = offsets[lo] + h as GenId;
                        sys.insert_rule(RewriteRule {
                            lhs: Word(alloc::vec![g, h]),
                            rhs: NcPoly::term(&[h, g], Scalar::one()),
                        });
                    }
                }
            }
        }
        sys.completed_to = legs.iter().map(|l| l.completed_to).min().unwrap_or(0);
        sys.degree_bound = legs.iter().map(|l| l.degree_bound).min().unwrap_or(0);
        Ok(TensorSystem { system: sys, offsets, sizes })
    }

    pub fn legs(&self) -> usize {
        self.offsets.len()
    }

    pub fn leg_generator(&self, leg: usize, g: GenId) -> GenId {
        assert!((g as usize) < self.sizes[leg]);
        self.offsets[leg] + g
    }

    /// Places a polynomial of leg `leg`'s algebra into the product.
    pub fn embed(&self, leg: usize, p: &NcPoly) -> NcPoly {
        let off = self.offsets[leg];
        p.map_letters(|g| g + off)
    }

    /// Leg of a product generator.
    pub fn leg_of(&self, g: GenId) -> usize {
        self.offsets.iter().rposition(|&o| o <= g).expect("generator of the product")
    }

    /// Splits each word of a normal form into per-leg words (leg-local ids)
    /// and collects coefficients: `p = Σ c · w₀ ⊗ w₁ ⊗ …`.
    pub fn decompose(&self, p: &NcPoly) -> Vec<(Vec<Word>, Scalar)> {
        let mut out = Vec::new();
        for (w, c) in p.terms() {
            let mut legs = alloc::vec![Vec::new(); self.legs()];
            for &g in w.letters() {
                let k = self.leg_of(g);
                legs[k].push(g - self.offsets[k]);
            }
            out.push((legs.into_iter().map(Word).collect(), c.clone()));
        }
        out
    }

    /// `p₀ ⊗ p₁ ⊗ …` as a product of embedded factors.
    pub fn tensor(&self, factors: &[&NcPoly]) -> NcPoly {
        assert_eq!(factors.len(), self.legs());
        let mut acc = NcPoly::one();
        for (k, f) in factors.iter().enumerate() {
            acc = acc.mul(&self.embed(k, f));
        }
        acc
    }
}

/// The tensor square with legs suffixed `L` and `R`.
pub fn tensor_square(sys: &RewriteSystem) -> Result<TensorSystem, AlgebraError> {
    TensorSystem::new(&[sys, sys], &["L", "R"])
}

/// Images of generators under an algebra homomorphism.
#[derive(Clone, Debug, Default)]
pub struct AlgebraMap {
    images: Vec<Option<NcPoly>>,
}

impl AlgebraMap {
    pub fn new(source_len: usize) -> Self {
        AlgebraMap { images: alloc::vec![None; source_len] }
    }

    pub fn identity(source_len: usize) -> Self {
        AlgebraMap { images: (0..source_len).map(|g| Some(NcPoly::generator(g as GenId))).collect() }
    }

    pub fn set(&mut self, g: GenId, image: NcPoly) {
        self.images[g as usize] = Some(image);
    }

    pub fn image(&self, g: GenId) -> Option<&NcPoly> {
        self.images.get(g as usize).and_then(|x| x.as_ref())
    }

    /// Multiplicative, linear extension; words map to ordered products of
    /// images. When `target` is given, partial products are reduced on the way.
    pub fn apply(&self, p: &NcPoly, source: &GeneratorTable, target: Option<&RewriteSystem>) -> Result<NcPoly, AlgebraError> {
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            let mut acc = NcPoly::constant(c.clone());
            for &g in w.letters() {
                let img = self
                    .image(g)
                    .ok_or_else(|| AlgebraError::UnmappedGenerator(source.name(g).to_string()))?;
                acc = acc.mul(img);
                if let Some(t) = target {
                    acc = t.normal_form(&acc);
                }
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        Ok(match target {
            Some(t) => t.normal_form(&out),
            None => out,
        })
    }
}

/// Generator images of a coproduct, each a finite sum `Σ pₖ ⊗ p′ₖ`.
#[derive(Clone, Debug, Default)]
pub struct Coproduct {
    images: Vec<Option<Vec<(NcPoly, NcPoly)>>>,
}

impl Coproduct {
    pub fn new(source_len: usize) -> Self {
        Coproduct { images: alloc::vec![None; source_len] }
    }

    pub fn set(&mut self, g: GenId, image: Vec<(NcPoly, NcPoly)>) {
        self.images[g as usize] = Some(image);
    }

    pub fn image(&self, g: GenId) -> Option<&[(NcPoly, NcPoly)]> {
        self.images.get(g as usize).and_then(|x| x.as_deref())
    }

    /// The coproduct as a map into legs `left` and `right` of `ts`.
    pub fn to_map(&self, ts: &TensorSystem, left: usize, right: usize) -> AlgebraMap {
        let mut map = AlgebraMap::new(self.images.len());
        for (g, img) in self.images.iter().enumerate() {
            if let Some(img) = img {
                let mut acc = NcPoly::zero();
                for (l, r) in img {
                    acc = acc.add(&ts.embed(left, l).mul(&ts.embed(right, r)));
                }
                map.set(g as GenId, acc);
            }
        }
        map
    }
}

/// Evaluates `p` under a character `g ↦ values[g]`.
pub fn apply_character(values: &[Scalar], p: &NcPoly) -> Scalar {
    let mut out = Scalar::zero();
    for (w, c) in p.terms() {
        let mut acc = c.clone();
        for &g in w.letters() {
            acc = &acc * &values[g as usize];
        }
        out += &acc;
    }
    out
}

/// Checks that `delta` and `counit` extend to a bialgebra structure on the
/// algebra presented by `rels`: `Δ(r)` lies in the ideal of the tensor
/// square, `ε(r) = 0`, and `(ε⊗id)Δ = id = (id⊗ε)Δ` on generators.
pub fn check_bialgebra(
    table: &GeneratorTable,
    rels: &RelationSet,
    delta: &Coproduct,
    counit: &[Scalar],
    bound: usize,
) -> Result<crate::report::Report, AlgebraError> {
    let mut report = crate::report::Report::new("bialgebra");
    let sys = RewriteSystem::from_relations(table.clone(), &rels.polys())?.complete(bound)?;
    let ts = tensor_square(&sys)?;
    let dmap = delta.to_map(&ts, 0, 1);
    for rel in rels.iter() {
        let img = dmap.apply(&rel.poly, table, Some(&ts.system))?;
        report.push_membership(&format!("delta:{}", rel.name), &ts.system.membership_of(&img), ts.system.table());
    }
    for rel in rels.iter() {
        let e = apply_character(counit, &rel.poly);
        report.check(&format!("counit:{}", rel.name), e.is_zero(), || e.to_string());
    }
    for g in 0..table.len() as GenId {
        let img = delta.image(g).ok_or_else(|| AlgebraError::UnmappedGenerator(table.name(g).to_string()))?;
        let expect = sys.normal_form(&NcPoly::generator(g));
        let mut left = NcPoly::zero();
        let mut right = NcPoly::zero();
        for (l, r) in img {
            left = left.add(&r.scale(&apply_character(counit, l)));
            right = right.add(&l.scale(&apply_character(counit, r)));
        }
        for (side, val) in [("left", left), ("right", right)] {
            let diff = sys.normal_form(&val.sub(&expect));
            report.check(&format!("counit-{side}:{}", table.name(g)), diff.is_zero(), || {
                diff.display(table).to_string()
            });
        }
    }
    Ok(report)
}

/// [`AlgebraMap::apply`] without intermediate reduction.
pub fn apply_hom(map: &AlgebraMap, p: &NcPoly, source: &GeneratorTable) -> Result<NcPoly, AlgebraError> {
    map.apply(p, source, None)
}

/// Dimension of the Scalar-linear span of `polys`.
pub fn span_rank(polys: &[NcPoly]) -> usize {
    let words: BTreeSet<&Word> = polys.iter().flat_map(|p| p.terms.keys()).collect();
    let words: Vec<&Word> = words.into_iter().collect();
    let rows = polys.iter().map(|p| words.iter().map(|w| p.coefficient(w)).collect()).collect();
    crate::linalg::Matrix::from_rows(rows).rank()
}

/// True when both families span the same Scalar-linear space.
pub fn same_span(a: &[NcPoly], b: &[NcPoly]) -> bool {
    let ra = span_rank(a);
    if ra != span_rank(b) {
        return false;
    }
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    span_rank(&all) == ra
}
