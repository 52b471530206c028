use std::collections::HashMap;

use super::proof::{Proof, ProofLine, Rule};
use super::schema::Schema;
use crate::prop::{substitute, Kind, PropFormula, Substitution};

fn imp(a: &PropFormula, b: &PropFormula) -> PropFormula {
    PropFormula::imp(a.clone(), b.clone())
}

/// Incremental proof construction. Each formula is derived at most once:
/// asking for a formula that is already on a line reuses that line.
///
/// Derived-rule methods take and return formulas; every formula passed as a
/// hypothesis must already be derived.
#[derive(Default)]
pub struct ProofBuilder {
    proof: Proof,
    line_of: HashMap<u64, u64>,
    pub(crate) fold_memo: HashMap<u64, PropFormula>,
    pub(crate) closed_memo: HashMap<u64, bool>,
}

impl ProofBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.proof.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.proof.lines.is_empty()
    }

    pub fn note(&mut self, text: impl Into<String>) {
        let at = self.proof.lines.len();
        self.proof.notes.push((at, text.into()));
    }

    pub fn has(&self, f: &PropFormula) -> bool {
        self.line_of.contains_key(&f.id())
    }

    pub fn line_id(&self, f: &PropFormula) -> Option<u64> {
        self.line_of.get(&f.id()).copied()
    }

    fn need(&self, f: &PropFormula) -> u64 {
        match self.line_id(f) {
            Some(id) => id,
            None => panic!("formula used as hypothesis before it was derived: {f}"),
        }
    }

    fn push(&mut self, f: PropFormula, rule: Rule) -> PropFormula {
        let id = self.proof.lines.len() as u64 + 1;
        self.line_of.entry(f.id()).or_insert(id);
        self.proof.lines.push(ProofLine {
            id,
            formula: f.clone(),
            rule,
        });
        f
    }

    fn add(&mut self, f: PropFormula, rule: Rule) -> PropFormula {
        if self.has(&f) {
            return f;
        }
        self.push(f, rule)
    }

    pub fn axiom(&mut self, s: Schema, args: &[&PropFormula]) -> PropFormula {
        self.add(s.instance(args), Rule::Axiom(s))
    }

    /// From `a` and `a ⊃ b`, derives `b`.
    pub fn mp(&mut self, a: &PropFormula, ab: &PropFormula) -> PropFormula {
        self.mp_with(a, ab, false)
    }

    /// Like [`ProofBuilder::mp`] but always writes a new line.
    pub fn mp_fresh(&mut self, a: &PropFormula, ab: &PropFormula) -> PropFormula {
        self.mp_with(a, ab, true)
    }

    fn mp_with(&mut self, a: &PropFormula, ab: &PropFormula, fresh: bool) -> PropFormula {
        let b = match ab.kind() {
            Kind::Imp(x, y) if x == a => y.clone(),
            _ => panic!("modus ponens shape: {ab} does not start with {a}"),
        };
        let rule = Rule::Mp(self.need(a), self.need(ab));
        if fresh {
            self.push(b, rule)
        } else {
            self.add(b, rule)
        }
    }

    /// Declares `f` as the next premise and cites it.
    pub fn premise(&mut self, f: &PropFormula) -> PropFormula {
        let k = match self.proof.premises.iter().position(|g| g == f) {
            Some(k) => k,
            None => {
                self.proof.premises.push(f.clone());
                self.proof.premises.len() - 1
            }
        };
        self.add(f.clone(), Rule::Premise(k))
    }

    pub fn import(&mut self, k: usize, f: &PropFormula) -> PropFormula {
        self.add(f.clone(), Rule::Import(k))
    }

    pub fn substitute(&mut self, target: &PropFormula, sigma: Substitution) -> PropFormula {
        let f = substitute(target, &sigma);
        let rule = Rule::Sub(self.need(target), sigma);
        self.add(f, rule)
    }

    /// Makes `f` (already derived) the last line.
    pub fn conclude(&mut self, f: &PropFormula) {
        if self.proof.conclusion() == Some(f) {
            return;
        }
        let r = self.refl(f);
        self.mp_fresh(f, &r);
    }

    pub fn finish(self) -> Proof {
        self.proof
    }

    pub fn proof(&self) -> &Proof {
        &self.proof
    }

    // Derived rules.

    /// `x ⊃ x`.
    pub fn refl(&mut self, x: &PropFormula) -> PropFormula {
        let goal = imp(x, x);
        if self.has(&goal) {
            return goal;
        }
        let xx = imp(x, x);
        let s = self.axiom(Schema::S, &[x, &xx, x]);
        let k1 = self.axiom(Schema::K, &[x, &xx]);
        let step = self.mp(&k1, &s);
        let k2 = self.axiom(Schema::K, &[x, x]);
        self.mp(&k2, &step)
    }

    /// From `y`, derives `x ⊃ y`.
    pub fn weaken(&mut self, y: &PropFormula, x: &PropFormula) -> PropFormula {
        let goal = imp(x, y);
        if self.has(&goal) {
            return goal;
        }
        let k = self.axiom(Schema::K, &[y, x]);
        self.mp(y, &k)
    }

    /// From `x ⊃ (y ⊃ z)` and `x ⊃ y`, derives `x ⊃ z`.
    pub fn imp_mp(&mut self, xyz: &PropFormula, xy: &PropFormula) -> PropFormula {
        let (x, y, z) = match (xyz.kind(), xy.kind()) {
            (Kind::Imp(x, yz), Kind::Imp(_, y)) => match yz.kind() {
                Kind::Imp(_, z) => (x.clone(), y.clone(), z.clone()),
                _ => panic!("imp_mp shape: {xyz}"),
            },
            _ => panic!("imp_mp shape: {xyz} / {xy}"),
        };
        let goal = imp(&x, &z);
        if self.has(&goal) {
            return goal;
        }
        let s = self.axiom(Schema::S, &[&x, &y, &z]);
        let step = self.mp(xyz, &s);
        self.mp(xy, &step)
    }

    /// From `x ⊃ y` and `y ⊃ z`, derives `x ⊃ z`.
    pub fn syll(&mut self, xy: &PropFormula, yz: &PropFormula) -> PropFormula {
        let x = match xy.kind() {
            Kind::Imp(x, _) => x.clone(),
            _ => panic!("syll shape: {xy}"),
        };
        let z = match yz.kind() {
            Kind::Imp(_, z) => z.clone(),
            _ => panic!("syll shape: {yz}"),
        };
        let goal = imp(&x, &z);
        if self.has(&goal) {
            return goal;
        }
        let w = self.weaken(yz, &x);
        self.imp_mp(&w, xy)
    }

    /// From `x ⊃ (y ⊃ z)`, derives `y ⊃ (x ⊃ z)`.
    pub fn perm(&mut self, xyz: &PropFormula) -> PropFormula {
        let (x, y, z) = match xyz.kind() {
            Kind::Imp(x, yz) => match yz.kind() {
                Kind::Imp(y, z) => (x.clone(), y.clone(), z.clone()),
                _ => panic!("perm shape: {xyz}"),
            },
            _ => panic!("perm shape: {xyz}"),
        };
        let goal = imp(&y, &imp(&x, &z));
        if self.has(&goal) {
            return goal;
        }
        let s = self.axiom(Schema::S, &[&x, &y, &z]);
        let step = self.mp(xyz, &s);
        let k = self.axiom(Schema::K, &[&y, &x]);
        self.syll(&k, &step)
    }

    /// `(y ⊃ z) ⊃ ((x ⊃ y) ⊃ (x ⊃ z))`.
    pub fn syll_thm(&mut self, x: &PropFormula, y: &PropFormula, z: &PropFormula) -> PropFormula {
        let s = self.axiom(Schema::S, &[x, y, z]);
        let k = self.axiom(Schema::K, &[&imp(y, z), x]);
        self.syll(&k, &s)
    }

    /// `⊥ ⊃ x`.
    pub fn bot_imp(&mut self, x: &PropFormula) -> PropFormula {
        let bot = PropFormula::bot();
        let goal = imp(&bot, x);
        if self.has(&goal) {
            return goal;
        }
        let ef = self.axiom(Schema::ExFalso, &[&bot, x]);
        let swapped = self.perm(&ef);
        let nb = self.axiom(Schema::NotBot, &[]);
        self.mp(&nb, &swapped)
    }

    /// From `x ⊃ y`, derives `¬y ⊃ ¬x`.
    pub fn contra(&mut self, xy: &PropFormula) -> PropFormula {
        let (x, y) = match xy.kind() {
            Kind::Imp(x, y) => (x.clone(), y.clone()),
            _ => panic!("contra shape: {xy}"),
        };
        let ny = PropFormula::not(y.clone());
        let goal = imp(&ny, &PropFormula::not(x.clone()));
        if self.has(&goal) {
            return goal;
        }
        let ni = self.axiom(Schema::NegIntro, &[&x, &y]);
        let step = self.mp(xy, &ni);
        let k = self.axiom(Schema::K, &[&ny, &x]);
        self.syll(&k, &step)
    }

    /// From `x` and `y`, derives `x ∧ y`.
    pub fn and_intro(&mut self, x: &PropFormula, y: &PropFormula) -> PropFormula {
        let goal = PropFormula::and(x.clone(), y.clone());
        if self.has(&goal) {
            return goal;
        }
        let ai = self.axiom(Schema::AndIntro, &[x, y]);
        let step = self.mp(x, &ai);
        self.mp(y, &step)
    }

    /// From `x`, derives `¬¬x`.
    pub fn nn(&mut self, x: &PropFormula) -> PropFormula {
        let nx = PropFormula::not(x.clone());
        let goal = PropFormula::not(nx.clone());
        if self.has(&goal) {
            return goal;
        }
        let ni = self.axiom(Schema::NegIntro, &[&nx, x]);
        let w = self.weaken(x, &nx);
        let step = self.mp(&w, &ni);
        let r = self.refl(&nx);
        self.mp(&r, &step)
    }

    /// From `c ⊃ x` and `¬x`, derives `¬c`.
    pub fn neg_from(&mut self, cx: &PropFormula, nx: &PropFormula) -> PropFormula {
        let (c, x) = match cx.kind() {
            Kind::Imp(c, x) => (c.clone(), x.clone()),
            _ => panic!("neg_from shape: {cx}"),
        };
        let goal = PropFormula::not(c.clone());
        if self.has(&goal) {
            return goal;
        }
        let ni = self.axiom(Schema::NegIntro, &[&c, &x]);
        let step = self.mp(cx, &ni);
        let w = self.weaken(nx, &c);
        self.mp(&w, &step)
    }

    /// From `¬x`, derives `x ⊃ y`.
    pub fn from_neg(&mut self, nx: &PropFormula, y: &PropFormula) -> PropFormula {
        let x = match nx.kind() {
            Kind::Not(x) => x.clone(),
            _ => panic!("from_neg shape: {nx}"),
        };
        let goal = imp(&x, y);
        if self.has(&goal) {
            return goal;
        }
        let ef = self.axiom(Schema::ExFalso, &[&x, y]);
        let swapped = self.perm(&ef);
        self.mp(nx, &swapped)
    }

    /// From `x`, derives `(x ⊃ y) ⊃ y`.
    pub fn apply_to(&mut self, x: &PropFormula, y: &PropFormula) -> PropFormula {
        let xy = imp(x, y);
        let goal = imp(&xy, y);
        if self.has(&goal) {
            return goal;
        }
        let r = self.refl(&xy);
        let swapped = self.perm(&r);
        self.mp(x, &swapped)
    }
}
