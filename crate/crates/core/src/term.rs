//! Lattice terms over named generators.
//!
//! Terms are hash-consed: two structurally identical terms share one node,
//! so equality and hashing are O(1) and the decision procedures in
//! [`crate::whitman`] can memoize on node ids. Interned nodes live for the
//! lifetime of the process.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};
use std::sync::{Arc, LazyLock, OnceLock};

use dashmap::DashMap;
use rustc_hash::FxBuildHasher;

use crate::error::{Error, Result};
use crate::finlat::FiniteLattice;

/// Join (`+`) or meet (`*`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Join,
    Meet,
}

impl Op {
    pub fn dual(self) -> Op {
        match self {
            Op::Join => Op::Meet,
            Op::Meet => Op::Join,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Op::Join => '+',
            Op::Meet => '*',
        }
    }
}

/// The shape of a term node.
#[derive(Debug)]
pub enum Node {
    Gen(Arc<str>),
    Op(Op, Box<[Term]>),
}

#[derive(Debug)]
struct Inner {
    id: u32,
    node: Node,
    size: u32,
    depth: u32,
    printed: OnceLock<Box<str>>,
}

/// A lattice term. Cheap to clone; equality is structural.
#[derive(Clone)]
pub struct Term(Arc<Inner>);

#[derive(PartialEq, Eq, Hash)]
enum Key {
    Gen(Arc<str>),
    Op(Op, Box<[u32]>),
}

static INTERNER: LazyLock<DashMap<Key, Term, FxBuildHasher>> =
    LazyLock::new(|| DashMap::with_hasher(FxBuildHasher));
static NEXT_ID: AtomicU32 = AtomicU32::new(0);

fn intern(key: Key, make: impl FnOnce() -> Node) -> Term {
    if let Some(t) = INTERNER.get(&key) {
        return t.clone();
    }
    INTERNER
        .entry(key)
        .or_insert_with(|| {
            let node = make();
            let (size, depth) = match &node {
                Node::Gen(_) => (0, 0),
                Node::Op(op, args) => {
                    let size = 1 + args.iter().map(|a| a.size() as u32).sum::<u32>();
                    let depth = args
                        .iter()
                        .map(|a| match a.op() {
                            Some(o) if o == *op => a.0.depth,
                            _ => a.0.depth + 1,
                        })
                        .max()
                        .unwrap_or(0);
                    (size, depth)
                }
            };
            Term(Arc::new(Inner {
                id: NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed),
                node,
                size,
                depth,
                printed: OnceLock::new(),
            }))
        })
        .clone()
}

impl Term {
    /// A generator term. The name is not checked against any generator set.
    pub fn var(name: &str) -> Term {
        let name: Arc<str> = Arc::from(name);
        intern(Key::Gen(name.clone()), || Node::Gen(name))
    }

    /// Builds an operation node with the operands in the given order.
    ///
    /// A single operand is returned unchanged.
    ///
    /// # Panics
    ///
    /// Panics if `operands` is empty.
    pub fn apply(op: Op, operands: impl IntoIterator<Item = Term>) -> Term {
        let mut args: Vec<Term> = operands.into_iter().collect();
        match args.len() {
            0 => panic!("empty {op:?}"),
            1 => args.pop().unwrap(),
            _ => {
                let key = Key::Op(op, args.iter().map(|a| a.id()).collect());
                intern(key, || Node::Op(op, args.into_boxed_slice()))
            }
        }
    }

    pub fn join(operands: impl IntoIterator<Item = Term>) -> Term {
        Term::apply(Op::Join, operands)
    }

    pub fn meet(operands: impl IntoIterator<Item = Term>) -> Term {
        Term::apply(Op::Meet, operands)
    }

    /// Binary join `self + other`.
    pub fn or(&self, other: &Term) -> Term {
        Term::join([self.clone(), other.clone()])
    }

    /// Binary meet `self * other`.
    pub fn and(&self, other: &Term) -> Term {
        Term::meet([self.clone(), other.clone()])
    }

    /// Unique id of the interned node.
    #[inline]
    pub fn id(&self) -> u32 {
        self.0.id
    }

    #[inline]
    pub fn node(&self) -> &Node {
        &self.0.node
    }

    #[inline]
    pub fn op(&self) -> Option<Op> {
        match &self.0.node {
            Node::Gen(_) => None,
            Node::Op(op, _) => Some(*op),
        }
    }

    /// Operands of a join/meet; empty for generators.
    #[inline]
    pub fn args(&self) -> &[Term] {
        match &self.0.node {
            Node::Gen(_) => &[],
            Node::Op(_, args) => args,
        }
    }

    pub fn gen_name(&self) -> Option<&str> {
        match &self.0.node {
            Node::Gen(name) => Some(name),
            Node::Op(..) => None,
        }
    }

    pub fn is_gen(&self) -> bool {
        matches!(self.0.node, Node::Gen(_))
    }

    /// Number of join/meet nodes.
    #[inline]
    pub fn size(&self) -> usize {
        self.0.size as usize
    }

    /// Maximum number of join/meet alternations on a root-to-leaf path.
    #[inline]
    pub fn alternation_depth(&self) -> usize {
        self.0.depth as usize
    }

    /// `(size, alternation_depth)`.
    pub fn complexity(&self) -> (usize, usize) {
        (self.size(), self.alternation_depth())
    }

    /// Generator names occurring in the term, sorted and deduplicated.
    pub fn generators(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_gens(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_gens(&self, out: &mut Vec<String>) {
        match &self.0.node {
            Node::Gen(name) => out.push(name.to_string()),
            Node::Op(_, args) => args.iter().for_each(|a| a.collect_gens(out)),
        }
    }

    /// Swaps joins and meets throughout.
    pub fn dual(&self) -> Term {
        match &self.0.node {
            Node::Gen(_) => self.clone(),
            Node::Op(op, args) => Term::apply(op.dual(), args.iter().map(Term::dual)),
        }
    }

    /// Replaces each generator by its image under `assignment`.
    pub fn substitute(&self, assignment: &HashMap<String, Term>) -> Result<Term> {
        self.substitute_with(&|name| assignment.get(name).cloned())
    }

    pub fn substitute_with(&self, f: &dyn Fn(&str) -> Option<Term>) -> Result<Term> {
        match &self.0.node {
            Node::Gen(name) => f(name).ok_or_else(|| Error::MissingAssignment(name.to_string())),
            Node::Op(op, args) => {
                let args = args.iter().map(|a| a.substitute_with(f)).collect::<Result<Vec<_>>>()?;
                Ok(Term::apply(*op, args))
            }
        }
    }

    /// Evaluates the term in a finite lattice.
    pub fn eval(&self, lattice: &FiniteLattice, assignment: &HashMap<String, usize>) -> Result<usize> {
        self.eval_with(lattice, &|name| assignment.get(name).copied())
    }

    pub fn eval_with(&self, lattice: &FiniteLattice, f: &dyn Fn(&str) -> Option<usize>) -> Result<usize> {
        match &self.0.node {
            Node::Gen(name) => {
                let v = f(name).ok_or_else(|| Error::MissingAssignment(name.to_string()))?;
                if v >= lattice.len() {
                    return Err(Error::ElementOutOfRange(v));
                }
                Ok(v)
            }
            Node::Op(op, args) => {
                let mut acc = args[0].eval_with(lattice, f)?;
                for a in &args[1..] {
                    let v = a.eval_with(lattice, f)?;
                    acc = match op {
                        Op::Join => lattice.join(acc, v),
                        Op::Meet => lattice.meet(acc, v),
                    };
                }
                Ok(acc)
            }
        }
    }

    /// Printed form, cached on the node.
    pub fn printed(&self) -> &str {
        self.0.printed.get_or_init(|| {
            let mut s = String::new();
            self.write_to(&mut s);
            s.into_boxed_str()
        })
    }

    fn write_to(&self, out: &mut String) {
        match &self.0.node {
            Node::Gen(name) => out.push_str(name),
            Node::Op(op, args) => {
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(op.symbol());
                    }
                    // A join operand never needs parentheses unless it is itself a join;
                    // a meet operand needs them around any operation.
                    let paren = !matches!((op, a.op()), (_, None) | (Op::Join, Some(Op::Meet)));
                    if paren {
                        out.push('(');
                        out.push_str(a.printed());
                        out.push(')');
                    } else {
                        out.push_str(a.printed());
                    }
                }
            }
        }
    }
}

impl PartialEq for Term {
    #[inline]
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for Term {}

impl Hash for Term {
    #[inline]
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state)
    }
}

/// Deterministic total order used for operand lists in canonical forms:
/// size, then alternation depth, then the printed form.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.id() == other.id() {
            return Ordering::Equal;
        }
        self.size()
            .cmp(&other.size())
            .then(self.alternation_depth().cmp(&other.alternation_depth()))
            .then_with(|| self.printed().cmp(other.printed()))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.printed())
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({})", self.printed())
    }
}

/// Ordered list of distinct generator names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    names: Vec<String>,
}

impl GeneratorSet {
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(|s| s.as_ref().to_string()).collect();
        if names.is_empty() {
            return Err(Error::InvalidGenerators("rank must be at least 1".into()));
        }
        for (i, n) in names.iter().enumerate() {
            let mut chars = n.chars();
            let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
                && chars.all(|c| c.is_ascii_alphanumeric());
            if !ok {
                return Err(Error::InvalidGenerators(format!("`{n}` is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidGenerators(format!("duplicate name `{n}`")));
            }
        }
        Ok(GeneratorSet { names })
    }

    /// Parses a comma-separated list such as `x,y,z`.
    pub fn parse(list: &str) -> Result<Self> {
        GeneratorSet::new(list.split(',').map(str::trim).filter(|s| !s.is_empty()))
    }

    /// `x1, ..., xn`.
    pub fn indexed(prefix: &str, n: usize) -> Result<Self> {
        GeneratorSet::new((1..=n).map(|i| format!("{prefix}{i}")))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.names.iter().any(|n| n == name)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn terms(&self) -> Vec<Term> {
        self.names.iter().map(|n| Term::var(n)).collect()
    }

    /// The join of all generators, the greatest element of the free lattice.
    pub fn top(&self) -> Term {
        Term::join(self.terms())
    }

    /// The meet of all generators.
    pub fn bottom(&self) -> Term {
        Term::meet(self.terms())
    }

    /// Checks that every generator of `t` belongs to this set.
    pub fn check(&self, t: &Term) -> Result<()> {
        match t.generators().into_iter().find(|g| !self.contains(g)) {
            Some(g) => Err(Error::UnknownGenerator(g)),
            None => Ok(()),
        }
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(","))
    }
}
