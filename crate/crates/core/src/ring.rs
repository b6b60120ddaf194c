//! Ring contexts: named variables plus the session coefficient field.

use crate::poly::Polynomial;
use crate::scalar::FieldSpec;

/// A polynomial ring context. Family rings list the `a` fiber variables
/// first and the `b` parameters last; fiber rings have no parameters in the
/// variable list (they may instead sit inside the coefficient field).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    pub vars: Vec<String>,
    pub field: FieldSpec,
}

impl Ring {
    pub fn new(vars: Vec<String>, field: FieldSpec) -> Self {
        Ring { vars, field }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one_of(self.nvars(), &self.field)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.nvars(), i, &self.field)
    }

    pub fn display(&self, p: &Polynomial) -> String {
        p.display_with(&self.vars)
    }
}
