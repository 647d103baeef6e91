//! Fixpoint closure of a fact set under generic lemmas.

use super::fact::Fact;
use super::rule::GenericLemma;
use super::store::{FactStore, View};
use super::KbError;

pub const DEFAULT_CLOSURE_CAP: usize = 100_000;

/// Least fixpoint of `facts` under `lemmas`. New facts are appended in a
/// deterministic order (lemma order, then match order).
pub fn close_generic(facts: &FactStore, lemmas: &[GenericLemma], cap: usize) -> Result<FactStore, KbError> {
    let mut store = facts.clone();
    if store.len() > cap {
        return Err(KbError::ClosureBudgetExceeded { cap });
    }
    loop {
        let mut fresh: Vec<Fact> = Vec::new();
        for lemma in lemmas {
            let layers = [&store];
            let view = View { layers: &layers };
            for env in view.join(&lemma.premises, &lemma.negated, vec![None; lemma.vars.len()]) {
                for c in &lemma.conclusions {
                    if let Some(f) = c.subst(&env) {
                        if !store.contains(&f) {
                            fresh.push(f);
                        }
                    }
                }
            }
        }
        let mut added = false;
        for f in fresh {
            if store.insert(f) {
                added = true;
                if store.len() > cap {
                    return Err(KbError::ClosureBudgetExceeded { cap });
                }
            }
        }
        if !added {
            return Ok(store);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::dsl::parse;
    use crate::kb::fact::Pred;
    use crate::kb::term::{Rational, Term};
    use crate::label::PointLabel::*;

    const LEMMAS: &str = "point A\npoint B\npoint C\npoint G\npoint Mc\npoint Ta\npoint T'a\n\
        generic l25: vecratio ?X ?Y ?X ?W ?R => vecratio ?W ?Y ?W ?X 1-?R\n\
        generic l27: harmonic ?X ?Y ?Z ?W => harmonic ?Z ?W ?X ?Y\n";

    fn store(extra: &str) -> (FactStore, Vec<GenericLemma>) {
        let doc = parse(&format!("{LEMMAS}{extra}")).unwrap();
        (FactStore::from_facts(doc.facts.into_iter().map(|f| f.1)), doc.generics)
    }

    #[test]
    fn lemma_25_adds_complement_ratio() {
        let (s, g) = store("lemma vecratio Mc G Mc C 1/3\n");
        let closed = close_generic(&s, &g, DEFAULT_CLOSURE_CAP).unwrap();
        let want = Fact::new(
            Pred::VecRatio,
            vec![Term::Point(C), Term::Point(G), Term::Point(C), Term::Point(Mc), Term::Num(Rational::new(2, 3))],
        );
        assert!(closed.contains(&want));
    }

    #[test]
    fn harmonic_symmetry_is_built_in() {
        let (s, g) = store("lemma harmonic B C Ta T'a\n");
        let closed = close_generic(&s, &g, DEFAULT_CLOSURE_CAP).unwrap();
        let swapped = Fact::new(Pred::Harmonic, vec![Term::Point(Ta), Term::Point(TaExt), Term::Point(B), Term::Point(C)]);
        assert!(closed.contains(&swapped));
        assert_eq!(closed.len(), 1);
    }

    #[test]
    fn empty_and_idempotent() {
        let (s, g) = store("");
        assert!(close_generic(&s, &g, DEFAULT_CLOSURE_CAP).unwrap().is_empty());
        let (s, g) = store("lemma vecratio Mc G Mc C 1/3\nlemma vecratio A Mc A B 1/2\n");
        let once = close_generic(&s, &g, DEFAULT_CLOSURE_CAP).unwrap();
        let twice = close_generic(&once, &g, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(once.sorted(), twice.sorted());
    }

    #[test]
    fn cap_is_enforced() {
        let (s, g) = store("lemma vecratio Mc G Mc C 1/3\n");
        assert!(matches!(close_generic(&s, &g, 1), Err(KbError::ClosureBudgetExceeded { cap: 1 })));
    }
}
