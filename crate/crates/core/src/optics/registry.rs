use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::element::{ElementSpec, OpticalElement, ResolvedArgs};
use super::elements::{build_builtin, ALL_SPECS};

pub type ElementFactory = Arc<dyn Fn(&ResolvedArgs) -> Result<Box<dyn OpticalElement>, String> + Send + Sync>;

#[derive(Clone)]
struct Entry {
    spec: ElementSpec,
    factory: ElementFactory,
}

/// Element kinds by name. Bench files refer to kinds by these names; the
/// propagation engine instantiates each node through its factory.
#[derive(Clone)]
pub struct ElementRegistry {
    entries: BTreeMap<&'static str, Entry>,
}

impl ElementRegistry {
    pub fn empty() -> ElementRegistry {
        ElementRegistry { entries: BTreeMap::new() }
    }

    /// The ten standard kinds: laser, hwp, pbs, bs, eom, aom, delay, phase,
    /// polarizer, mirror.
    pub fn builtin() -> ElementRegistry {
        let mut reg = ElementRegistry::empty();
        for spec in ALL_SPECS {
            let kind = spec.kind;
            reg.register(spec, Arc::new(move |args| build_builtin(kind, args)));
        }
        reg
    }

    /// Shared instance of [`ElementRegistry::builtin`].
    pub fn standard() -> &'static ElementRegistry {
        static STANDARD: OnceLock<ElementRegistry> = OnceLock::new();
        STANDARD.get_or_init(ElementRegistry::builtin)
    }

    /// Adds a kind, replacing any existing kind of the same name.
    pub fn register(&mut self, spec: ElementSpec, factory: ElementFactory) {
        self.entries.insert(spec.kind, Entry { spec, factory });
    }

    pub fn spec(&self, kind: &str) -> Option<&ElementSpec> {
        self.entries.get(kind).map(|e| &e.spec)
    }

    pub fn build(&self, kind: &str, args: &ResolvedArgs) -> Result<Box<dyn OpticalElement>, String> {
        let entry = self.entries.get(kind).ok_or_else(|| format!("unknown element kind `{kind}`"))?;
        (entry.factory)(args)
    }

    pub fn kinds(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }
}

impl Default for ElementRegistry {
    fn default() -> Self {
        ElementRegistry::builtin()
    }
}

impl fmt::Debug for ElementRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.keys()).finish()
    }
}
