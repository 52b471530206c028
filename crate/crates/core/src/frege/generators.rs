//! Proof generators: closed formulas, constant-folding equivalences, and the
//! schematic tautologies left over once a formula is instantiated.

use super::builder::ProofBuilder;
use super::proof::Proof;
use super::schema::Schema;
use crate::prop::{eval_closed, fold, Kind, PropFormula};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("formula has atoms: {0}")]
    NotClosed(PropFormula),
    #[error("closed formula is false: {0}")]
    FalseClosed(PropFormula),
    #[error("`{to}` is not reachable from `{from}` by folding constants")]
    NotReachable { from: PropFormula, to: PropFormula },
    #[error("no schematic proof for {0}")]
    NotTrivial(PropFormula),
}

fn imp(a: &PropFormula, b: &PropFormula) -> PropFormula {
    PropFormula::imp(a.clone(), b.clone())
}

fn not(a: &PropFormula) -> PropFormula {
    PropFormula::not(a.clone())
}

/// One folding step at the root: the smart constructor applied to the
/// immediate children.
fn step(h: &PropFormula) -> PropFormula {
    match h.kind() {
        Kind::Const(_) | Kind::Atom(_) => h.clone(),
        Kind::Not(x) => PropFormula::not_folded(x.clone()),
        Kind::And(x, y) => PropFormula::and_folded(x.clone(), y.clone()),
        Kind::Or(x, y) => PropFormula::or_folded(x.clone(), y.clone()),
        Kind::Imp(x, y) => PropFormula::imp_folded(x.clone(), y.clone()),
    }
}

impl ProofBuilder {
    /// Proves a closed formula if it is true and its negation otherwise.
    /// Returns the value.
    pub fn closed(&mut self, f: &PropFormula) -> bool {
        debug_assert!(f.is_closed());
        if let Some(&v) = self.closed_memo.get(&f.id()) {
            return v;
        }
        let v = match f.kind() {
            Kind::Const(true) => {
                self.axiom(Schema::Top, &[]);
                true
            }
            Kind::Const(false) => {
                self.axiom(Schema::NotBot, &[]);
                false
            }
            Kind::Atom(_) => unreachable!("closed formula with an atom"),
            Kind::Not(x) => {
                if self.closed(x) {
                    self.nn(x);
                    false
                } else {
                    true
                }
            }
            Kind::And(x, y) => {
                let (vx, vy) = (self.closed(x), self.closed(y));
                if vx && vy {
                    self.and_intro(x, y);
                } else if !vx {
                    let e = self.axiom(Schema::AndElimL, &[x, y]);
                    self.neg_from(&e, &not(x));
                } else {
                    let e = self.axiom(Schema::AndElimR, &[x, y]);
                    self.neg_from(&e, &not(y));
                }
                vx && vy
            }
            Kind::Or(x, y) => {
                let (vx, vy) = (self.closed(x), self.closed(y));
                if vx {
                    let i = self.axiom(Schema::OrIntroL, &[x, y]);
                    self.mp(x, &i);
                } else if vy {
                    let i = self.axiom(Schema::OrIntroR, &[x, y]);
                    self.mp(y, &i);
                } else {
                    let bot = PropFormula::bot();
                    let xb = self.from_neg(&not(x), &bot);
                    let yb = self.from_neg(&not(y), &bot);
                    let e = self.axiom(Schema::OrElim, &[x, y, &bot]);
                    let e1 = self.mp(&xb, &e);
                    let fb = self.mp(&yb, &e1);
                    let nb = self.axiom(Schema::NotBot, &[]);
                    self.neg_from(&fb, &nb);
                }
                vx || vy
            }
            Kind::Imp(x, y) => {
                let (vx, vy) = (self.closed(x), self.closed(y));
                if vy {
                    self.weaken(y, x);
                } else if !vx {
                    self.from_neg(&not(x), y);
                } else {
                    let cy = self.apply_to(x, y);
                    self.neg_from(&cy, &not(y));
                }
                !vx || vy
            }
        };
        self.closed_memo.insert(f.id(), v);
        v
    }

    /// For closed `h` with value `v`, proves `h ⊃ v` and `v ⊃ h`.
    fn closed_equiv(&mut self, h: &PropFormula) -> PropFormula {
        let top = PropFormula::top();
        let bot = PropFormula::bot();
        if self.closed(h) {
            let t = self.axiom(Schema::Top, &[]);
            self.weaken(&t, h);
            self.weaken(h, &top);
            top
        } else {
            self.from_neg(&not(h), &bot);
            self.bot_imp(h);
            bot
        }
    }

    /// Proves `h ⊃ g` and `g ⊃ h` where `g` folds `h` at the root only.
    /// Returns `g`.
    pub fn fold_step(&mut self, h: &PropFormula) -> PropFormula {
        let g = step(h);
        if g == *h {
            self.refl(h);
            return g;
        }
        if h.is_closed() && g.as_const().is_some() {
            return self.closed_equiv(h);
        }
        let top = PropFormula::top();
        let bot = PropFormula::bot();
        match h.kind() {
            Kind::And(x, y) => {
                if x.as_const() == Some(false) || y.as_const() == Some(false) {
                    let s = if x.as_const() == Some(false) {
                        Schema::AndElimL
                    } else {
                        Schema::AndElimR
                    };
                    self.axiom(s, &[x, y]);
                    self.bot_imp(h);
                } else if x.as_const() == Some(true) {
                    self.axiom(Schema::AndElimR, &[x, y]);
                    let ai = self.axiom(Schema::AndIntro, &[x, y]);
                    let t = self.axiom(Schema::Top, &[]);
                    self.mp(&t, &ai);
                } else {
                    self.axiom(Schema::AndElimL, &[x, y]);
                    let ai = self.axiom(Schema::AndIntro, &[x, y]);
                    let sw = self.perm(&ai);
                    let t = self.axiom(Schema::Top, &[]);
                    self.mp(&t, &sw);
                }
            }
            Kind::Or(x, y) => {
                if x.as_const() == Some(true) || y.as_const() == Some(true) {
                    let t = self.axiom(Schema::Top, &[]);
                    self.weaken(&t, h);
                    let s = if x.as_const() == Some(true) {
                        Schema::OrIntroL
                    } else {
                        Schema::OrIntroR
                    };
                    self.axiom(s, &[x, y]);
                } else if x.as_const() == Some(false) {
                    self.axiom(Schema::OrIntroR, &[x, y]);
                    let e = self.axiom(Schema::OrElim, &[x, y, y]);
                    let b = self.bot_imp(y);
                    let e1 = self.mp(&b, &e);
                    let r = self.refl(y);
                    self.mp(&r, &e1);
                } else {
                    self.axiom(Schema::OrIntroL, &[x, y]);
                    let e = self.axiom(Schema::OrElim, &[x, y, x]);
                    let r = self.refl(x);
                    let e1 = self.mp(&r, &e);
                    let b = self.bot_imp(x);
                    self.mp(&b, &e1);
                }
            }
            Kind::Imp(x, y) => match (x.as_const(), y.as_const()) {
                (Some(true), _) => {
                    self.axiom(Schema::Top, &[]);
                    self.apply_to(&top, y);
                    self.axiom(Schema::K, &[y, &top]);
                }
                (Some(false), _) => {
                    let t = self.axiom(Schema::Top, &[]);
                    self.weaken(&t, h);
                    let b = self.bot_imp(y);
                    self.weaken(&b, &top);
                }
                (_, Some(true)) => {
                    let t = self.axiom(Schema::Top, &[]);
                    self.weaken(&t, h);
                    let w = self.weaken(&t, x);
                    self.weaken(&w, &top);
                }
                _ => {
                    // y = ⊥, g = ¬x
                    let ni = self.axiom(Schema::NegIntro, &[x, &bot]);
                    let sw = self.perm(&ni);
                    let nb = self.axiom(Schema::NotBot, &[]);
                    let w = self.weaken(&nb, x);
                    self.mp(&w, &sw);
                    let ef = self.axiom(Schema::ExFalso, &[x, &bot]);
                    self.perm(&ef);
                }
            },
            Kind::Not(_) | Kind::Const(_) | Kind::Atom(_) => {
                unreachable!("a non-closed negation is its own step")
            }
        }
        g
    }

    /// Given `x ⊃ x'`, `x' ⊃ x` (and the same for `y`), proves both
    /// directions between `h = op(x, y)` and `op(x', y')`. Returns the
    /// latter.
    fn congruence(
        &mut self,
        h: &PropFormula,
        x2: &PropFormula,
        y2: Option<&PropFormula>,
    ) -> PropFormula {
        match h.kind() {
            Kind::Not(x) => {
                let back = self.contra(&imp(x2, x));
                let fwd = self.contra(&imp(x, x2));
                debug_assert!(self.has(&back) && self.has(&fwd));
                not(x2)
            }
            Kind::And(x, y) => {
                let y2 = y2.expect("binary");
                let g = PropFormula::and(x2.clone(), y2.clone());
                self.cong_and(x, y, x2, y2);
                self.cong_and(x2, y2, x, y);
                g
            }
            Kind::Or(x, y) => {
                let y2 = y2.expect("binary");
                let g = PropFormula::or(x2.clone(), y2.clone());
                self.cong_or(x, y, x2, y2);
                self.cong_or(x2, y2, x, y);
                g
            }
            Kind::Imp(x, y) => {
                let y2 = y2.expect("binary");
                let g = imp(x2, y2);
                self.cong_imp(x, y, x2, y2);
                self.cong_imp(x2, y2, x, y);
                g
            }
            Kind::Const(_) | Kind::Atom(_) => h.clone(),
        }
    }

    /// `(x ∧ y) ⊃ (a ∧ b)` from `x ⊃ a` and `y ⊃ b`.
    fn cong_and(&mut self, x: &PropFormula, y: &PropFormula, a: &PropFormula, b: &PropFormula) {
        let xy = PropFormula::and(x.clone(), y.clone());
        let el = self.axiom(Schema::AndElimL, &[x, y]);
        let er = self.axiom(Schema::AndElimR, &[x, y]);
        let la = self.syll(&el, &imp(x, a));
        let rb = self.syll(&er, &imp(y, b));
        let ai = self.axiom(Schema::AndIntro, &[a, b]);
        let w = self.weaken(&ai, &xy);
        let s1 = self.imp_mp(&w, &la);
        self.imp_mp(&s1, &rb);
    }

    /// `(x ∨ y) ⊃ (a ∨ b)` from `x ⊃ a` and `y ⊃ b`.
    fn cong_or(&mut self, x: &PropFormula, y: &PropFormula, a: &PropFormula, b: &PropFormula) {
        let ab = PropFormula::or(a.clone(), b.clone());
        let il = self.axiom(Schema::OrIntroL, &[a, b]);
        let ir = self.axiom(Schema::OrIntroR, &[a, b]);
        let xab = self.syll(&imp(x, a), &il);
        let yab = self.syll(&imp(y, b), &ir);
        let e = self.axiom(Schema::OrElim, &[x, y, &ab]);
        let e1 = self.mp(&xab, &e);
        self.mp(&yab, &e1);
    }

    /// `(x ⊃ y) ⊃ (a ⊃ b)` from `a ⊃ x` and `y ⊃ b`.
    fn cong_imp(&mut self, x: &PropFormula, y: &PropFormula, a: &PropFormula, b: &PropFormula) {
        // (x ⊃ y) ⊃ (a ⊃ y)
        let t = self.syll_thm(a, x, y);
        let sw = self.perm(&t);
        let first = self.mp(&imp(a, x), &sw);
        // (a ⊃ y) ⊃ (a ⊃ b)
        let t2 = self.syll_thm(a, y, b);
        let second = self.mp(&imp(y, b), &t2);
        self.syll(&first, &second);
    }

    /// Transitivity for both directions: from `a ↔ b` and `b ↔ c` (as two
    /// implications each), derives `a ⊃ c` and `c ⊃ a`.
    fn chain(&mut self, a: &PropFormula, b: &PropFormula, c: &PropFormula) {
        if a == b || b == c {
            return;
        }
        self.syll(&imp(a, b), &imp(b, c));
        self.syll(&imp(c, b), &imp(b, a));
    }

    /// Proves `f ⊃ fold(f)` and `fold(f) ⊃ f`. Returns `fold(f)`.
    pub fn fold_equiv(&mut self, f: &PropFormula) -> PropFormula {
        if let Some(g) = self.fold_memo.get(&f.id()) {
            return g.clone();
        }
        let g = if f.is_closed() && f.as_const().is_none() {
            self.closed_equiv(f)
        } else {
            match f.kind() {
                Kind::Const(_) | Kind::Atom(_) => {
                    self.refl(f);
                    f.clone()
                }
                Kind::Not(x) => {
                    let x2 = self.fold_equiv(x);
                    let h = if x2 == *x {
                        f.clone()
                    } else {
                        self.congruence(f, &x2, None)
                    };
                    let g = self.fold_step(&h);
                    self.chain(f, &h, &g);
                    g
                }
                Kind::And(x, y) | Kind::Or(x, y) | Kind::Imp(x, y) => {
                    let x2 = self.fold_equiv(x);
                    let y2 = self.fold_equiv(y);
                    let h = if x2 == *x && y2 == *y {
                        f.clone()
                    } else {
                        self.congruence(f, &x2, Some(&y2))
                    };
                    let g = self.fold_step(&h);
                    self.chain(f, &h, &g);
                    g
                }
            }
        };
        if g == *f {
            self.refl(f);
        }
        self.fold_memo.insert(f.id(), g.clone());
        g
    }

    /// Proves `a ⊃ b` and `b ⊃ a` when `b` arises from `a` by folding some
    /// constant subformulas.
    pub fn equiv(&mut self, a: &PropFormula, b: &PropFormula) -> Result<(), GenError> {
        if !reachable(a, b) {
            return Err(GenError::NotReachable {
                from: a.clone(),
                to: b.clone(),
            });
        }
        self.equiv_unchecked(a, b);
        Ok(())
    }

    fn equiv_unchecked(&mut self, a: &PropFormula, b: &PropFormula) {
        if a == b {
            self.refl(a);
            return;
        }
        if same_shape_reachable(a, b) {
            let (ac, bc) = (a.children(), b.children());
            for (x, y) in ac.iter().zip(&bc) {
                self.equiv_unchecked(x, y);
            }
            let h = self.congruence(a, bc[0], bc.get(1).copied());
            debug_assert_eq!(h, *b);
            return;
        }
        if fold(a) == *b {
            self.fold_equiv(a);
            return;
        }
        let a2 = self.fold_step(a);
        self.equiv_unchecked(&a2, b);
        self.chain(a, &a2, b);
    }

    /// Schematic tautologies: `⊤`, `¬⊥`, `x ⊃ x`, and conjunctions of these.
    /// Closed formulas are proved by evaluation.
    pub fn trivial(&mut self, f: &PropFormula) -> Result<(), GenError> {
        if self.has(f) {
            return Ok(());
        }
        if f.is_closed() {
            return if self.closed(f) {
                Ok(())
            } else {
                Err(GenError::FalseClosed(f.clone()))
            };
        }
        match f.kind() {
            Kind::Imp(x, y) if x == y => {
                self.refl(x);
                Ok(())
            }
            Kind::And(x, y) => {
                self.trivial(x)?;
                self.trivial(y)?;
                self.and_intro(x, y);
                Ok(())
            }
            _ => Err(GenError::NotTrivial(f.clone())),
        }
    }
}

fn same_shape_reachable(a: &PropFormula, b: &PropFormula) -> bool {
    let same = matches!(
        (a.kind(), b.kind()),
        (Kind::Not(_), Kind::Not(_))
            | (Kind::And(..), Kind::And(..))
            | (Kind::Or(..), Kind::Or(..))
            | (Kind::Imp(..), Kind::Imp(..))
    );
    same && a
        .children()
        .iter()
        .zip(b.children())
        .all(|(x, y)| reachable(x, y))
}

/// Whether [`ProofBuilder::equiv`] can connect `a` and `b`.
pub fn reachable(a: &PropFormula, b: &PropFormula) -> bool {
    if a == b || same_shape_reachable(a, b) || fold(a) == *b {
        return true;
    }
    let a2 = step(a);
    a2 != *a && reachable(&a2, b)
}

/// A premise-free proof of closed `f`.
pub fn prove_closed(f: &PropFormula) -> Result<Proof, GenError> {
    if !f.is_closed() {
        return Err(GenError::NotClosed(f.clone()));
    }
    if eval_closed(f) != Some(true) {
        return Err(GenError::FalseClosed(f.clone()));
    }
    let mut b = ProofBuilder::new();
    b.closed(f);
    b.conclude(f);
    Ok(b.finish())
}

/// A proof whose last line is `(a ⊃ b) ∧ (b ⊃ a)`.
pub fn prove_equiv_chain(a: &PropFormula, b: &PropFormula) -> Result<Proof, GenError> {
    let mut pb = ProofBuilder::new();
    pb.equiv(a, b)?;
    let goal = pb.and_intro(&imp(a, b), &imp(b, a));
    pb.conclude(&goal);
    Ok(pb.finish())
}

/// A proof of `f ⊃ fold(f)` and `fold(f) ⊃ f`, ending in their conjunction.
pub fn prove_fold_equiv(f: &PropFormula) -> Proof {
    let mut pb = ProofBuilder::new();
    let g = pb.fold_equiv(f);
    let goal = pb.and_intro(&imp(f, &g), &imp(&g, f));
    pb.conclude(&goal);
    pb.finish()
}

pub fn prove_trivial(f: &PropFormula) -> Result<Proof, GenError> {
    let mut pb = ProofBuilder::new();
    pb.trivial(f)?;
    pb.conclude(f);
    Ok(pb.finish())
}

/// `a ∨ ¬a` from the axioms alone.
pub fn excluded_middle(a: &PropFormula) -> Proof {
    let na = not(a);
    let d = PropFormula::or(a.clone(), na.clone());
    let nd = not(&d);
    let mut b = ProofBuilder::new();
    // ¬D ⊃ ¬a and ¬D ⊃ ¬¬a, so ¬¬D, so D
    let il = b.axiom(Schema::OrIntroL, &[a, &na]);
    let ir = b.axiom(Schema::OrIntroR, &[a, &na]);
    let c1 = b.contra(&il);
    let c2 = b.contra(&ir);
    let ni = b.axiom(Schema::NegIntro, &[&nd, &na]);
    let s1 = b.mp(&c1, &ni);
    let nnd = b.mp(&c2, &s1);
    let dn = b.axiom(Schema::DoubleNeg, &[&d]);
    b.mp_fresh(&nnd, &dn);
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frege::check_proof;
    use crate::prop::{is_tautology_bruteforce, parse_prop};

    fn p(s: &str) -> PropFormula {
        parse_prop(s).unwrap()
    }

    #[test]
    fn closed_examples() {
        let t = prove_closed(&p("T")).unwrap();
        assert_eq!(t.len(), 1);
        let nb = prove_closed(&p("(~ F)")).unwrap();
        assert_eq!(nb.len(), 1);
        let f = p("(> (& T (~ F)) T)");
        let pr = prove_closed(&f).unwrap();
        assert_eq!(pr.conclusion(), Some(&f));
        assert_eq!(check_proof(&pr, &[]), Ok(()));
        assert!(matches!(
            prove_closed(&p("(& T F)")),
            Err(GenError::FalseClosed(_))
        ));
        assert!(matches!(
            prove_closed(&p("q1")),
            Err(GenError::NotClosed(_))
        ));
    }

    #[test]
    fn every_small_closed_formula() {
        let leaves = [p("T"), p("F")];
        let mut level: Vec<PropFormula> = leaves.to_vec();
        for _ in 0..2 {
            let mut next = level.clone();
            for a in &level {
                next.push(PropFormula::not(a.clone()));
                for b in &level {
                    next.push(PropFormula::and(a.clone(), b.clone()));
                    next.push(PropFormula::or(a.clone(), b.clone()));
                    next.push(PropFormula::imp(a.clone(), b.clone()));
                }
            }
            level = next;
        }
        for f in level {
            let target = if eval_closed(&f) == Some(true) {
                f.clone()
            } else {
                not(&f)
            };
            let pr = prove_closed(&target).unwrap();
            assert_eq!(check_proof(&pr, &[]), Ok(()), "{target}");
        }
    }

    #[test]
    fn equiv_chain_examples() {
        for (a, b) in [
            ("(& q1 T)", "q1"),
            ("q1", "q1"),
            ("(| F q1)", "q1"),
            ("(& T (& q1 T))", "(& q1 T)"),
            ("(> (~ (& q2 F)) (| q1 F))", "q1"),
            ("(> q1 F)", "(~ q1)"),
        ] {
            let (a, b) = (p(a), p(b));
            let pr = prove_equiv_chain(&a, &b).unwrap();
            assert_eq!(check_proof(&pr, &[]), Ok(()), "{a} ~ {b}");
            let goal = PropFormula::and(imp(&a, &b), imp(&b, &a));
            assert_eq!(pr.conclusion(), Some(&goal));
        }
        assert!(matches!(
            prove_equiv_chain(&p("(& q1 T)"), &p("q2")),
            Err(GenError::NotReachable { .. })
        ));
    }

    #[test]
    fn fold_equiv_covers_every_rule() {
        let atoms = [p("q1"), p("(~ q2)")];
        let consts = [p("T"), p("F")];
        for x in atoms.iter().chain(&consts) {
            for y in atoms.iter().chain(&consts) {
                for f in [
                    PropFormula::not(PropFormula::and(x.clone(), y.clone())),
                    PropFormula::or(x.clone(), y.clone()),
                    PropFormula::imp(x.clone(), y.clone()),
                    PropFormula::and(PropFormula::imp(x.clone(), y.clone()), y.clone()),
                ] {
                    let pr = prove_fold_equiv(&f);
                    assert_eq!(check_proof(&pr, &[]), Ok(()), "{f}");
                    let g = fold(&f);
                    let goal = PropFormula::and(imp(&f, &g), imp(&g, &f));
                    assert_eq!(pr.conclusion(), Some(&goal));
                }
            }
        }
    }

    #[test]
    fn trivial_formulas() {
        let f = p("(& (> q1 q1) (& T (& (~ F) (> (& q1 q2) (& q1 q2)))))");
        let pr = prove_trivial(&f).unwrap();
        assert_eq!(check_proof(&pr, &[]), Ok(()));
        assert_eq!(pr.conclusion(), Some(&f));
        assert!(prove_trivial(&p("(> q1 q2)")).is_err());
    }

    #[test]
    fn excluded_middle_fixture() {
        let f = p("(| q1 (~ q1))");
        let pr = excluded_middle(&p("q1"));
        assert_eq!(check_proof(&pr, &[]), Ok(()));
        assert_eq!(pr.conclusion(), Some(&f));
        assert!(is_tautology_bruteforce(&f).unwrap());
    }
}
