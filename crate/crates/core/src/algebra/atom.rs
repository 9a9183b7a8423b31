use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::degree::Degree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AtomKind {
    /// A function of time; differentiable.
    Field,
    /// A graded constant; annihilated by d/dt.
    Constant,
}

/// A graded generator: a component field with a number of time derivatives, or a graded constant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    name: Arc<str>,
    degree: Degree,
    deriv: u32,
    kind: AtomKind,
}

impl Atom {
    pub fn field(name: &str, degree: Degree) -> Self {
        Atom { name: name.into(), degree, deriv: 0, kind: AtomKind::Field }
    }

    pub fn constant(name: &str, degree: Degree) -> Self {
        Atom { name: name.into(), degree, deriv: 0, kind: AtomKind::Constant }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn deriv(&self) -> u32 {
        self.deriv
    }

    pub fn kind(&self) -> AtomKind {
        self.kind
    }

    pub fn is_constant(&self) -> bool {
        self.kind == AtomKind::Constant
    }

    pub fn is_odd(&self) -> bool {
        self.degree.is_odd()
    }

    /// The `n`-th time derivative; `None` for constants when `n > 0`.
    pub fn derived(&self, n: u32) -> Option<Atom> {
        if n == 0 {
            return Some(self.clone());
        }
        if self.is_constant() {
            return None;
        }
        Some(Atom { deriv: self.deriv + n, ..self.clone() })
    }

    /// The same atom with derivative order reset to zero.
    pub fn base(&self) -> Atom {
        Atom { deriv: 0, ..self.clone() }
    }

    pub fn renamed(&self, name: &str) -> Atom {
        Atom { name: name.into(), ..self.clone() }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.deriv == 0 {
            write!(f, "{}", self.name)
        } else {
            write!(f, "{}^{{({})}}", self.name, self.deriv)
        }
    }
}

/// Total order on atoms used to put monomials in normal form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AtomOrder {
    /// Lexicographic on (name, derivative order).
    #[default]
    Lex,
    /// The reverse of `Lex`.
    ReverseLex,
}

thread_local! {
    static ORDER: Cell<AtomOrder> = const { Cell::new(AtomOrder::Lex) };
}

/// The monomial order in effect on the current thread.
pub fn atom_order() -> AtomOrder {
    ORDER.with(|o| o.get())
}

/// Runs `f` with `order` as the canonical atom order on this thread.
///
/// Values built under one order must not be mixed with values built under another.
pub fn with_atom_order<T>(order: AtomOrder, f: impl FnOnce() -> T) -> T {
    struct Restore(AtomOrder);
    impl Drop for Restore {
        fn drop(&mut self) {
            ORDER.with(|o| o.set(self.0));
        }
    }
    let previous = ORDER.with(|o| o.replace(order));
    let _restore = Restore(previous);
    f()
}

pub(crate) fn canonical_cmp(x: &Atom, y: &Atom, order: AtomOrder) -> Ordering {
    let lex = x
        .name
        .cmp(&y.name)
        .then(x.deriv.cmp(&y.deriv))
        .then(x.degree.cmp(&y.degree))
        .then(x.kind.cmp(&y.kind));
    match order {
        AtomOrder::Lex => lex,
        AtomOrder::ReverseLex => lex.reverse(),
    }
}
