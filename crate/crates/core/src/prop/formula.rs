use std::collections::{BTreeSet, HashMap, HashSet};
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock, Weak};

use super::atom::PropAtom;

/// Hash-consed propositional formula.
///
/// Every structurally distinct formula has exactly one live node, so equality
/// and hashing are by node identity.
#[derive(Clone)]
pub struct PropFormula(Arc<Node>);

pub struct Node {
    id: u64,
    kind: Kind,
    size: u64,
    closed: bool,
}

pub enum Kind {
    Const(bool),
    Atom(PropAtom),
    Not(PropFormula),
    And(PropFormula, PropFormula),
    Or(PropFormula, PropFormula),
    Imp(PropFormula, PropFormula),
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Key {
    Const(bool),
    Atom(PropAtom),
    Not(u64),
    And(u64, u64),
    Or(u64, u64),
    Imp(u64, u64),
}

struct Interner {
    table: HashMap<Key, Weak<Node>>,
    next_id: u64,
    prune_at: usize,
}

fn interner() -> &'static Mutex<Interner> {
    static CELL: OnceLock<Mutex<Interner>> = OnceLock::new();
    CELL.get_or_init(|| {
        Mutex::new(Interner {
            table: HashMap::new(),
            next_id: 0,
            prune_at: 1 << 16,
        })
    })
}

fn intern(kind: Kind) -> PropFormula {
    let key = match &kind {
        Kind::Const(b) => Key::Const(*b),
        Kind::Atom(a) => Key::Atom(a.clone()),
        Kind::Not(a) => Key::Not(a.id()),
        Kind::And(a, b) => Key::And(a.id(), b.id()),
        Kind::Or(a, b) => Key::Or(a.id(), b.id()),
        Kind::Imp(a, b) => Key::Imp(a.id(), b.id()),
    };
    let (size, closed) = match &kind {
        Kind::Const(_) => (1, true),
        Kind::Atom(_) => (1, false),
        Kind::Not(a) => (a.symbol_size().saturating_add(1), a.is_closed()),
        Kind::And(a, b) | Kind::Or(a, b) | Kind::Imp(a, b) => (
            a.symbol_size()
                .saturating_add(b.symbol_size())
                .saturating_add(1),
            a.is_closed() && b.is_closed(),
        ),
    };
    let mut guard = interner().lock().unwrap_or_else(|e| e.into_inner());
    if let Some(node) = guard.table.get(&key).and_then(Weak::upgrade) {
        return PropFormula(node);
    }
    let id = guard.next_id;
    guard.next_id += 1;
    let node = Arc::new(Node {
        id,
        kind,
        size,
        closed,
    });
    guard.table.insert(key, Arc::downgrade(&node));
    if guard.table.len() >= guard.prune_at {
        guard.table.retain(|_, w| w.strong_count() > 0);
        guard.prune_at = (guard.table.len() * 2).max(1 << 16);
    }
    PropFormula(node)
}

impl PropFormula {
    pub fn constant(b: bool) -> Self {
        intern(Kind::Const(b))
    }

    pub fn top() -> Self {
        Self::constant(true)
    }

    pub fn bot() -> Self {
        Self::constant(false)
    }

    pub fn atom(a: PropAtom) -> Self {
        intern(Kind::Atom(a))
    }

    pub fn q(i: usize) -> Self {
        Self::atom(PropAtom::q(i))
    }

    pub fn bit(var: &str, i: u64) -> Self {
        Self::atom(PropAtom::bit(var, i))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: PropFormula) -> Self {
        intern(Kind::Not(a))
    }

    pub fn and(a: PropFormula, b: PropFormula) -> Self {
        intern(Kind::And(a, b))
    }

    pub fn or(a: PropFormula, b: PropFormula) -> Self {
        intern(Kind::Or(a, b))
    }

    pub fn imp(a: PropFormula, b: PropFormula) -> Self {
        intern(Kind::Imp(a, b))
    }

    /// `(a ⊃ b) ∧ (b ⊃ a)`.
    pub fn iff(a: PropFormula, b: PropFormula) -> Self {
        Self::and(Self::imp(a.clone(), b.clone()), Self::imp(b, a))
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    /// Identity of the shared node; stable for the node's lifetime.
    pub fn id(&self) -> u64 {
        self.0.id
    }

    /// Number of symbols in the fully expanded tree (saturating).
    pub fn symbol_size(&self) -> u64 {
        self.0.size
    }

    /// True when the formula mentions no atoms.
    pub fn is_closed(&self) -> bool {
        self.0.closed
    }

    pub fn as_const(&self) -> Option<bool> {
        match self.kind() {
            Kind::Const(b) => Some(*b),
            _ => None,
        }
    }

    pub fn children(&self) -> Vec<&PropFormula> {
        match self.kind() {
            Kind::Const(_) | Kind::Atom(_) => vec![],
            Kind::Not(a) => vec![a],
            Kind::And(a, b) | Kind::Or(a, b) | Kind::Imp(a, b) => vec![a, b],
        }
    }

    /// Distinct nodes reachable from this one.
    pub fn node_count(&self) -> usize {
        let mut seen = HashSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if seen.insert(f.id()) {
                stack.extend(f.children());
            }
        }
        seen.len()
    }

    pub fn atoms(&self) -> BTreeSet<PropAtom> {
        let mut seen = HashSet::new();
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if f.is_closed() || !seen.insert(f.id()) {
                continue;
            }
            if let Kind::Atom(a) = f.kind() {
                out.insert(a.clone());
            }
            stack.extend(f.children());
        }
        out
    }

    /// Nesting depth (atoms and constants have depth 0).
    pub fn depth(&self) -> usize {
        let mut memo: HashMap<u64, usize> = HashMap::new();
        fn go(f: &PropFormula, memo: &mut HashMap<u64, usize>) -> usize {
            if let Some(d) = memo.get(&f.id()) {
                return *d;
            }
            let d = f
                .children()
                .into_iter()
                .map(|c| go(c, memo) + 1)
                .max()
                .unwrap_or(0);
            memo.insert(f.id(), d);
            d
        }
        go(self, &mut memo)
    }
}

impl PartialEq for PropFormula {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for PropFormula {}

impl Hash for PropFormula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state)
    }
}
