//! Knowledge base: terms, facts, the text DSL, generic-lemma closure and the
//! numeric model used to check it.

pub mod closure;
pub mod dsl;
pub mod fact;
pub mod model;
pub mod pattern;
pub mod rule;
pub mod store;
pub mod term;

use std::collections::{BTreeSet, HashMap};

pub use closure::{close_generic, DEFAULT_CLOSURE_CAP};
pub use dsl::Source;
pub use fact::{Fact, Pred};
pub use model::{numeric_check_kb, KbCheckReport};
pub use rule::{ConstructionRule, GenericLemma, NdgKind, Op, Premise};
pub use store::FactStore;
pub use term::{AngleExpr, Ctor, Kind, Rational, Term, TriAngle};

use crate::label::PointLabel;

/// The shipped knowledge base text.
pub const WERNICK_KB: &str = include_str!("../../data/wernick.kb");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KbError {
    #[error("{line}:{col}: parse error: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("line {line}: {msg}")]
    Validation { line: usize, msg: String },
    #[error("generic closure exceeded {cap} facts")]
    ClosureBudgetExceeded { cap: usize },
}

/// Immutable, closed knowledge base shared by all solver workers.
#[derive(Debug, Clone)]
pub struct KnowledgeBase {
    pub vocabulary: Vec<PointLabel>,
    base: Vec<(Source, Fact)>,
    facts: FactStore,
    pub generics: Vec<GenericLemma>,
    pub rules: Vec<ConstructionRule>,
    admissible: BTreeSet<Term>,
}

pub fn load_kb(text: &str) -> Result<KnowledgeBase, KbError> {
    load_kb_with_cap(text, DEFAULT_CLOSURE_CAP)
}

pub fn load_kb_with_cap(text: &str, cap: usize) -> Result<KnowledgeBase, KbError> {
    let doc = dsl::parse(text)?;
    let mut seen: HashMap<&Fact, usize> = HashMap::new();
    for (_, f, line) in &doc.facts {
        if let Some(first) = seen.insert(f, *line) {
            return Err(KbError::Validation { line: *line, msg: format!("duplicate fact `{f}` (first on line {first})") });
        }
    }
    let mut store = FactStore::new();
    for (_, f, _) in &doc.facts {
        store.insert(f.clone());
    }
    for f in notational_closure(&store) {
        store.insert(f);
    }
    let closed = close_generic(&store, &doc.generics, cap)?;
    let mut admissible = BTreeSet::new();
    for f in closed.iter() {
        admissible.extend(f.objects());
    }
    Ok(KnowledgeBase {
        vocabulary: doc.points,
        base: doc.facts.into_iter().map(|(s, f, _)| (s, f)).collect(),
        facts: closed,
        generics: doc.generics,
        rules: doc.rules,
        admissible,
    })
}

fn notational_closure(store: &FactStore) -> Vec<Fact> {
    let mut objs = BTreeSet::new();
    for f in store.iter() {
        objs.extend(f.objects());
    }
    objs.iter().flat_map(Fact::notational).collect()
}

impl KnowledgeBase {
    /// The shipped Wernick knowledge base.
    pub fn wernick() -> KnowledgeBase {
        load_kb(WERNICK_KB).expect("shipped knowledge base loads")
    }

    pub fn empty() -> KnowledgeBase {
        load_kb("").expect("empty knowledge base loads")
    }

    /// Facts written as definitions, before closure.
    pub fn instantiate_definitions(&self) -> Vec<Fact> {
        self.base.iter().filter(|(s, _)| matches!(s, Source::Def(_))).map(|(_, f)| f.clone()).collect()
    }

    /// Facts written as instantiated lemmas, before closure.
    pub fn instantiate_lemmas(&self) -> Vec<Fact> {
        self.base.iter().filter(|(s, _)| matches!(s, Source::Lemma(_))).map(|(_, f)| f.clone()).collect()
    }

    /// Facts carrying a given tag, e.g. `Source::Lemma(Some(9))`.
    pub fn tagged(&self, src: Source) -> Vec<Fact> {
        self.base.iter().filter(|(s, _)| *s == src).map(|(_, f)| f.clone()).collect()
    }

    pub fn base_len(&self) -> usize {
        self.base.len()
    }

    pub fn facts(&self) -> &FactStore {
        &self.facts
    }

    pub fn holds(&self, f: &Fact) -> bool {
        self.facts.contains(f)
    }

    pub fn is_admissible(&self, t: &Term) -> bool {
        self.admissible.contains(t)
    }

    pub fn admissible(&self) -> &BTreeSet<Term> {
        &self.admissible
    }

    pub fn rule(&self, id: &str) -> Option<&ConstructionRule> {
        self.rules.iter().find(|r| r.id == id)
    }

    /// Canonical serialization of the closed fact base, one fact per line.
    pub fn serialize_facts(&self) -> String {
        self.facts.sorted().iter().map(|f| format!("{f}\n")).collect()
    }
}
