//! Interned propositional variables.
//!
//! Variables are interned process-wide: equal names always yield the same
//! handle, so equality and ordering are cheap integer operations. Rendered
//! output is ordered by name, which keeps it independent of interning
//! history.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

/// Handle of an interned propositional variable.
///
/// `Ord` compares interned ids, which is fast and stable within a process.
/// Use [`Variable::cmp_by_name`] where an interning-independent order is
/// needed (e.g. user-facing output).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(u32);

struct Interner {
    names: Vec<Arc<str>>,
    ids: HashMap<Arc<str>, u32>,
}

static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();

fn interner() -> &'static RwLock<Interner> {
    INTERNER.get_or_init(|| {
        RwLock::new(Interner {
            names: Vec::new(),
            ids: HashMap::new(),
        })
    })
}

/// True for identifiers of the shape `[A-Za-z_][A-Za-z0-9_]*`.
pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Variable {
    /// Interns `name` and returns its handle. Repeated calls with the same
    /// name return the same handle.
    ///
    /// Panics if `name` is not a valid identifier.
    pub fn intern(name: &str) -> Variable {
        assert!(is_valid_name(name), "invalid variable name: {name:?}");
        {
            let int = interner().read().unwrap();
            if let Some(&id) = int.ids.get(name) {
                return Variable(id);
            }
        }
        let mut int = interner().write().unwrap();
        if let Some(&id) = int.ids.get(name) {
            return Variable(id);
        }
        let id = u32::try_from(int.names.len()).expect("interner overflow");
        let name: Arc<str> = Arc::from(name);
        int.names.push(Arc::clone(&name));
        int.ids.insert(name, id);
        Variable(id)
    }

    /// The interned name.
    pub fn name(&self) -> Arc<str> {
        let int = interner().read().unwrap();
        Arc::clone(&int.names[self.0 as usize])
    }

    /// The stable integer id assigned at interning time.
    pub fn id(&self) -> u32 {
        self.0
    }

    /// Name-based total order, independent of interning history.
    pub fn cmp_by_name(&self, other: &Variable) -> Ordering {
        if self == other {
            Ordering::Equal
        } else {
            self.name().cmp(&other.name())
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

// Debug shows the name, not the opaque id.
impl fmt::Debug for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Sorts a slice of variables by name.
pub fn sort_by_name(vars: &mut [Variable]) {
    vars.sort_by(|a, b| a.cmp_by_name(b));
}
