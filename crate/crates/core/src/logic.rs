//! Literals, clauses, formulas and the handful of operations every
//! forgetting algorithm is built from.
//!
//! Clauses and formulas are kept in canonical form: literals sorted by
//! `(variable, polarity)` with the positive literal first, clauses sorted
//! lexicographically. Two values are equal iff they denote the same set.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use crate::error::Error;
use crate::meter::Meter;

/// Identifiers below this value are single characters (their code point);
/// identifiers from here on are interned `&name;` entities.
const ENTITY_BASE: u32 = 0x11_0000;

/// Largest number of variables [`Formula::entails`] will enumerate.
pub const ENTAILMENT_GUARD: usize = 24;

#[derive(Default)]
struct Interner {
    names: Vec<String>,
    ids: HashMap<String, u32>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(Default::default)
}

/// A propositional variable.
///
/// Single-character variables are identified by their code point, so they
/// order alphabetically. Entity variables (`&name;`) are interned on first
/// use and order after every single character, by first appearance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    pub fn from_char(c: char) -> Var {
        Var(c as u32)
    }

    /// The variable written `&name;`. The name must be non-empty.
    pub fn entity(name: &str) -> Var {
        assert!(!name.is_empty(), "entity names are non-empty");
        if let Some(&id) = interner().read().unwrap().ids.get(name) {
            return Var(id);
        }
        let mut table = interner().write().unwrap();
        if let Some(&id) = table.ids.get(name) {
            return Var(id);
        }
        let id = ENTITY_BASE + table.names.len() as u32;
        table.names.push(name.to_owned());
        table.ids.insert(name.to_owned(), id);
        Var(id)
    }

    /// The `index`-th lowercase letter, `a` for 0.
    pub fn letter(index: usize) -> Var {
        assert!(index < 26, "only 26 letters");
        Var::from_char((b'a' + index as u8) as char)
    }

    pub fn id(self) -> u32 {
        self.0
    }

    pub fn is_entity(self) -> bool {
        self.0 >= ENTITY_BASE
    }

    pub fn positive(self) -> Literal {
        Literal::new(self, true)
    }

    pub fn negative(self) -> Literal {
        Literal::new(self, false)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_entity() {
            let table = interner().read().unwrap();
            write!(f, "&{};", table.names[(self.0 - ENTITY_BASE) as usize])
        } else {
            let c = char::from_u32(self.0).expect("single-character variable");
            write!(f, "{c}")
        }
    }
}

/// Set of variables, e.g. the variables to forget.
pub type VarSet = BTreeSet<Var>;

/// A variable together with a polarity.
///
/// Packed as `var << 1 | negated`, so the derived order sorts by variable
/// first and puts the positive literal before the negative one.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal(u32);

impl Literal {
    pub fn new(var: Var, positive: bool) -> Literal {
        Literal(var.0 << 1 | u32::from(!positive))
    }

    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn negate(self) -> Literal {
        Literal(self.0 ^ 1)
    }
}

impl std::ops::Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        self.negate()
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.is_positive() {
            f.write_str("-")?;
        }
        write!(f, "{}", self.var())
    }
}

/// Outcome of resolving two clauses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolvent {
    Clause(Clause),
    /// The resolvent contains a complementary pair and is discarded.
    Tautology,
}

impl Resolvent {
    pub fn into_clause(self) -> Option<Clause> {
        match self {
            Resolvent::Clause(c) => Some(c),
            Resolvent::Tautology => None,
        }
    }
}

/// A disjunction of literals. The empty clause is ⊥.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Clause(Vec<Literal>);

impl Clause {
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Clause {
        let mut lits: Vec<Literal> = literals.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        Clause(lits)
    }

    /// The empty clause ⊥.
    pub fn empty() -> Clause {
        Clause(Vec::new())
    }

    fn from_sorted(lits: Vec<Literal>) -> Clause {
        debug_assert!(lits.windows(2).all(|w| w[0] < w[1]));
        Clause(lits)
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.0.binary_search(&lit).is_ok()
    }

    pub fn mentions(&self, var: Var) -> bool {
        self.contains(var.positive()) || self.contains(var.negative())
    }

    /// The literal of `var` in this clause, if any. For a tautological
    /// clause the positive literal is returned.
    pub fn literal_of(&self, var: Var) -> Option<Literal> {
        [var.positive(), var.negative()]
            .into_iter()
            .find(|&l| self.contains(l))
    }

    /// Variables in ascending order, without repetition.
    pub fn variables(&self) -> impl Iterator<Item = Var> + '_ {
        let mut last = None;
        self.0.iter().filter_map(move |l| {
            let v = l.var();
            (last.replace(v) != Some(v)).then_some(v)
        })
    }

    pub fn is_tautology(&self) -> bool {
        // complementary literals are adjacent in canonical order
        self.0.windows(2).any(|w| w[0].var() == w[1].var())
    }

    /// `self ⊆ other`.
    pub fn subsumes(&self, other: &Clause) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut rest = other.0.iter();
        'outer: for lit in &self.0 {
            for o in rest.by_ref() {
                match o.cmp(lit) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    /// Resolve on `var`. One clause must contain `var` and the other `¬var`,
    /// in either argument order.
    pub fn resolve(&self, other: &Clause, var: Var) -> Result<Resolvent, Error> {
        let (pos, neg) = (var.positive(), var.negative());
        let ok = (self.contains(pos) && other.contains(neg))
            || (self.contains(neg) && other.contains(pos));
        if !ok {
            return Err(Error::Contract(format!(
                "clauses {self} and {other} do not clash on {var}"
            )));
        }
        // drop only the clashing pair; a tautological input keeps its other literal
        let (mine, theirs) = if self.contains(pos) && other.contains(neg) {
            (pos, neg)
        } else {
            (neg, pos)
        };
        let mut merged = Vec::with_capacity(self.len() + other.len() - 2);
        let mut a = self.0.iter().copied().filter(|&l| l != mine).peekable();
        let mut b = other.0.iter().copied().filter(|&l| l != theirs).peekable();
        loop {
            let next = match (a.peek(), b.peek()) {
                (Some(&x), Some(&y)) if x == y => {
                    b.next();
                    a.next()
                }
                (Some(&x), Some(&y)) if x < y => a.next(),
                (Some(_), Some(_)) => b.next(),
                (Some(_), None) => a.next(),
                (None, Some(_)) => b.next(),
                (None, None) => break,
            };
            let lit = next.unwrap();
            if merged.last().is_some_and(|&prev: &Literal| prev.var() == lit.var()) {
                return Ok(Resolvent::Tautology);
            }
            merged.push(lit);
        }
        Ok(Resolvent::Clause(Clause::from_sorted(merged)))
    }

    /// The clause without any literal on `var`.
    pub fn without(&self, var: Var) -> Clause {
        Clause(self.0.iter().copied().filter(|l| l.var() != var).collect())
    }

    /// Value under a partial model: `Some(true)` if some literal is true,
    /// `Some(false)` if all are false, `None` otherwise.
    pub fn value(&self, model: &PartialModel) -> Option<bool> {
        let mut undecided = false;
        for &lit in &self.0 {
            match model.value_of(lit) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => undecided = true,
            }
        }
        if undecided {
            None
        } else {
            Some(false)
        }
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("!");
        }
        for lit in &self.0 {
            write!(f, "{lit}")?;
        }
        Ok(())
    }
}

impl FromIterator<Literal> for Clause {
    fn from_iter<I: IntoIterator<Item = Literal>>(iter: I) -> Self {
        Clause::new(iter)
    }
}

/// A conjunction of clauses. The empty formula is always true.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Formula(BTreeSet<Clause>);

impl Formula {
    pub fn new() -> Formula {
        Formula::default()
    }

    /// The formula `{⊥}`.
    pub fn contradiction() -> Formula {
        Formula::from_iter([Clause::empty()])
    }

    pub fn insert(&mut self, clause: Clause) -> bool {
        self.0.insert(clause)
    }

    pub fn remove(&mut self, clause: &Clause) -> bool {
        self.0.remove(clause)
    }

    pub fn contains(&self, clause: &Clause) -> bool {
        self.0.contains(clause)
    }

    pub fn clauses(&self) -> impl ExactSizeIterator<Item = &Clause> + Clone + '_ {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn has_empty_clause(&self) -> bool {
        self.0.first().is_some_and(Clause::is_empty)
    }

    /// Total number of literal occurrences.
    pub fn literal_count(&self) -> usize {
        self.0.iter().map(Clause::len).sum()
    }

    pub fn alphabet(&self) -> VarSet {
        self.0.iter().flat_map(Clause::variables).collect()
    }

    pub fn mentions(&self, var: Var) -> bool {
        self.0.iter().any(|c| c.mentions(var))
    }

    /// The formula without its tautological clauses, which are always true.
    pub fn without_tautologies(&self) -> Formula {
        self.0.iter().filter(|c| !c.is_tautology()).cloned().collect()
    }

    pub fn into_clauses(self) -> BTreeSet<Clause> {
        self.0
    }

    /// Drops every clause that is a proper superset of another.
    pub fn minimize(&self) -> Formula {
        minimize(self.0.iter().cloned(), &mut Meter::new())
    }

    /// Truth value under an assignment covering every variable of the formula.
    pub fn eval(&self, assignment: &PartialModel) -> Result<bool, Error> {
        let mut all = true;
        for clause in &self.0 {
            match clause.value(assignment) {
                Some(true) => {}
                Some(false) => all = false,
                None => {
                    return Err(Error::Contract(format!(
                        "assignment does not cover clause {clause}"
                    )))
                }
            }
        }
        Ok(all)
    }

    /// `self ⊨ clause`, decided by enumerating every assignment of the
    /// variables involved.
    pub fn entails(&self, clause: &Clause) -> Result<bool, Error> {
        let mut vars = self.alphabet();
        vars.extend(clause.variables());
        if vars.len() > ENTAILMENT_GUARD {
            return Err(Error::GuardExceeded {
                vars: vars.len(),
                limit: ENTAILMENT_GUARD,
            });
        }
        let vars: Vec<Var> = vars.into_iter().collect();
        for bits in 0u64..1 << vars.len() {
            let model = PartialModel::from_bits(&vars, bits);
            if self.eval(&model)? && !clause.value(&model).unwrap() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl FromIterator<Clause> for Formula {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> Self {
        Formula(iter.into_iter().collect())
    }
}

impl Extend<Clause> for Formula {
    fn extend<I: IntoIterator<Item = Clause>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl IntoIterator for Formula {
    type Item = Clause;
    type IntoIter = std::collections::btree_set::IntoIter<Clause>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a Formula {
    type Item = &'a Clause;
    type IntoIter = std::collections::btree_set::Iter<'a, Clause>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Subsumption-minimizes a set of clauses.
///
/// Clauses are bucketed by size and visited shortest first; each one is
/// compared only with the kept clauses of strictly smaller size. A clause
/// subsumed by a dropped clause is also subsumed by whatever dropped that
/// one, so comparing against kept clauses suffices. Every comparison costs
/// one time unit.
pub fn minimize(clauses: impl IntoIterator<Item = Clause>, meter: &mut Meter) -> Formula {
    let mut by_size: BTreeMap<usize, BTreeSet<Clause>> = BTreeMap::new();
    for c in clauses {
        by_size.entry(c.len()).or_default().insert(c);
    }
    let mut kept: Vec<Clause> = Vec::new();
    for bucket in by_size.into_values() {
        let smaller = kept.len();
        for c in bucket {
            let mut subsumed = false;
            for k in &kept[..smaller] {
                meter.tick(1);
                if k.subsumes(&c) {
                    subsumed = true;
                    break;
                }
            }
            if !subsumed {
                kept.push(c);
            }
        }
    }
    kept.into_iter().collect()
}

/// A consistent set of literals: at most one value per variable.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PartialModel(BTreeMap<Var, bool>);

impl PartialModel {
    pub fn new() -> PartialModel {
        PartialModel::default()
    }

    /// The model assigning `vars[i]` the value of bit `i` of `bits`.
    pub fn from_bits(vars: &[Var], bits: u64) -> PartialModel {
        PartialModel(
            vars.iter()
                .enumerate()
                .map(|(i, &v)| (v, bits >> i & 1 == 1))
                .collect(),
        )
    }

    /// Adds `lit`. Fails if the model already assigns its variable the
    /// opposite value; assigning the same value again is a no-op.
    pub fn assign(&mut self, lit: Literal) -> Result<(), Error> {
        match self.0.insert(lit.var(), lit.is_positive()) {
            Some(prev) if prev != lit.is_positive() => {
                self.0.insert(lit.var(), prev);
                Err(Error::Contract(format!(
                    "{lit} contradicts the partial model"
                )))
            }
            _ => Ok(()),
        }
    }

    pub fn with(&self, lit: Literal) -> Result<PartialModel, Error> {
        let mut next = self.clone();
        next.assign(lit)?;
        Ok(next)
    }

    pub fn value(&self, var: Var) -> Option<bool> {
        self.0.get(&var).copied()
    }

    pub fn value_of(&self, lit: Literal) -> Option<bool> {
        self.value(lit.var()).map(|b| b == lit.is_positive())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        self.0.iter().map(|(&v, &b)| Literal::new(v, b))
    }

    /// `¬I`: the clause falsified exactly by this model.
    pub fn negation(&self) -> Clause {
        Clause::from_sorted(self.literals().map(Literal::negate).collect())
    }
}

impl fmt::Debug for PartialModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.literals()).finish()
    }
}

impl FromIterator<Literal> for PartialModel {
    /// Later literals override earlier ones on the same variable.
    fn from_iter<I: IntoIterator<Item = Literal>>(iter: I) -> Self {
        PartialModel(iter.into_iter().map(|l| (l.var(), l.is_positive())).collect())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Test shorthand: `clause("a-b")` is a ∨ ¬b.
    pub(crate) fn clause(s: &str) -> Clause {
        if s == "!" {
            return Clause::empty();
        }
        let mut lits = Vec::new();
        let mut positive = true;
        for c in s.chars() {
            if c == '-' {
                positive = false;
            } else {
                lits.push(Literal::new(Var::from_char(c), positive));
                positive = true;
            }
        }
        Clause::new(lits)
    }

    pub(crate) fn formula(s: &str) -> Formula {
        s.split_whitespace().map(clause).collect()
    }

    fn v(c: char) -> Var {
        Var::from_char(c)
    }

    #[test]
    fn literal_order_and_negation() {
        let a = v('a').positive();
        assert!(a < !a);
        assert!(!a < v('b').positive());
        assert_eq!(!!a, a);
        assert_eq!((!a).var(), a.var());
        assert!(!(!a).is_positive());
    }

    #[test]
    fn resolve_examples() {
        let r = clause("ab").resolve(&clause("-bc"), v('b')).unwrap();
        assert_eq!(r, Resolvent::Clause(clause("ac")));
        let r = clause("x").resolve(&clause("-x"), v('x')).unwrap();
        assert_eq!(r, Resolvent::Clause(Clause::empty()));
        let r = clause("ab").resolve(&clause("-a-b"), v('b')).unwrap();
        assert_eq!(r, Resolvent::Tautology);
    }

    #[test]
    fn resolve_symmetric_and_checks_clash() {
        let (c, d) = (clause("a-bd"), clause("bc-d"));
        assert_eq!(
            c.resolve(&d, v('b')).unwrap(),
            d.resolve(&c, v('b')).unwrap()
        );
        assert!(matches!(
            clause("ab").resolve(&clause("bc"), v('b')),
            Err(Error::Contract(_))
        ));
        assert!(clause("ab").resolve(&clause("c"), v('a')).is_err());
    }

    #[test]
    fn resolve_removes_only_the_clashing_pair() {
        let r = clause("b-b").resolve(&clause("-b"), v('b')).unwrap();
        assert_eq!(r, Resolvent::Clause(clause("-b")));
    }

    #[test]
    fn resolve_merges_shared_literals() {
        let r = clause("abx").resolve(&clause("b-xc"), v('x')).unwrap();
        assert_eq!(r, Resolvent::Clause(clause("abc")));
    }

    #[test]
    fn tautology() {
        assert!(clause("a-a").is_tautology());
        assert!(!clause("ab").is_tautology());
        assert!(!Clause::empty().is_tautology());
    }

    #[test]
    fn subsumption() {
        assert!(clause("a").subsumes(&clause("ab")));
        assert!(!clause("ab").subsumes(&clause("a")));
        assert!(Clause::empty().subsumes(&clause("a-bc")));
        assert!(clause("ab").subsumes(&clause("ab")));
        assert!(!clause("-a").subsumes(&clause("ab")));
        assert!(clause("ac").subsumes(&clause("abc")));
    }

    #[test]
    fn minimize_examples() {
        assert_eq!(formula("a ab").minimize(), formula("a"));
        assert_eq!(formula("ab -ab").minimize(), formula("ab -ab"));
        assert_eq!(formula("! a ab").minimize(), Formula::contradiction());
    }

    #[test]
    fn minimize_counts_comparisons() {
        let mut meter = Meter::new();
        minimize(formula("a b ab").into_clauses(), &mut meter);
        // `a` and `b` share a size and are never compared; `ab` stops at `a`
        assert_eq!(meter.time_total(), 1);
    }

    #[test]
    fn eval_examples() {
        let m: PartialModel = [v('a').positive(), v('b').negative()].into_iter().collect();
        assert!(formula("ab").eval(&m).unwrap());
        assert!(!formula("a -a").eval(&m).unwrap());
        assert!(Formula::new().eval(&PartialModel::new()).unwrap());
        assert!(formula("c").eval(&m).is_err());
    }

    #[test]
    fn entails_examples() {
        assert!(formula("ab -bc").entails(&clause("ac")).unwrap());
        assert!(!formula("a").entails(&clause("b")).unwrap());
        assert!(formula("ab -bc -cd").entails(&clause("ad")).unwrap());
        assert!(formula("a -a").entails(&Clause::empty()).unwrap());
    }

    #[test]
    fn entails_guard() {
        let big: Formula = (0..25)
            .map(|i| Clause::new([Var::from_char(char::from_u32('A' as u32 + i).unwrap()).positive()]))
            .collect();
        assert!(matches!(
            big.entails(&Clause::empty()),
            Err(Error::GuardExceeded { vars: 25, .. })
        ));
    }

    #[test]
    fn partial_model_is_consistent() {
        let mut m = PartialModel::new();
        m.assign(v('a').positive()).unwrap();
        m.assign(v('a').positive()).unwrap();
        assert!(m.assign(v('a').negative()).is_err());
        assert_eq!(m.value(v('a')), Some(true));
        m.assign(v('b').negative()).unwrap();
        assert_eq!(m.negation(), clause("-ab"));
    }

    #[test]
    fn entity_variables() {
        let x = Var::entity("alpha");
        assert_eq!(x, Var::entity("alpha"));
        assert!(x > Var::from_char('z'));
        assert_eq!(x.to_string(), "&alpha;");
        assert_eq!(Literal::new(x, false).to_string(), "-&alpha;");
    }

    #[test]
    fn clause_variables_dedup() {
        let vars: Vec<Var> = clause("a-ab").variables().collect();
        assert_eq!(vars, vec![v('a'), v('b')]);
    }
}
