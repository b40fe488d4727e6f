use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Variable names and positive integer weights of a polynomial ring over Q.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VariableContext {
    names: Vec<String>,
    weights: Vec<u32>,
}

pub type Ring = Arc<VariableContext>;

impl VariableContext {
    pub fn new<S: Into<String>>(names: Vec<S>, weights: Vec<u32>) -> Result<Ring> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != weights.len() {
            return Err(Error::InvalidContext(format!(
                "{} names but {} weights",
                names.len(),
                weights.len()
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidContext(format!("bad variable name `{}`", name)));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidContext(format!("duplicate variable `{}`", name)));
            }
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidContext(format!(
                "variable `{}` has weight 0",
                names[i]
            )));
        }
        Ok(Arc::new(VariableContext { names, weights }))
    }

    /// Standard-graded ring on the given names.
    pub fn standard<S: Into<String>>(names: Vec<S>) -> Result<Ring> {
        let n = names.len();
        Self::new(names, vec![1; n])
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_standard_graded(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// New context with `extra` prepended (used for elimination variables).
    pub fn with_front(&self, extra: &[(&str, u32)]) -> Result<Ring> {
        let mut names: Vec<String> = extra.iter().map(|(n, _)| n.to_string()).collect();
        let mut weights: Vec<u32> = extra.iter().map(|(_, w)| *w).collect();
        names.extend(self.names.iter().cloned());
        weights.extend(self.weights.iter().copied());
        VariableContext::new(names, weights)
    }

    /// New context with `extra` appended.
    pub fn with_back(&self, extra: &[(String, u32)]) -> Result<Ring> {
        let mut names = self.names.clone();
        let mut weights = self.weights.clone();
        for (n, w) in extra {
            names.push(n.clone());
            weights.push(*w);
        }
        VariableContext::new(names, weights)
    }

    /// A name not already used, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.index_of(base).is_none() {
            return base.to_string();
        }
        (0..)
            .map(|k| format!("{}_{}", base, k))
            .find(|c| self.index_of(c).is_none())
            .unwrap()
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}

impl fmt::Debug for VariableContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[")?;
        for (i, (n, w)) in self.names.iter().zip(&self.weights).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if *w == 1 {
                write!(f, "{}", n)?;
            } else {
                write!(f, "{}:{}", n, w)?;
            }
        }
        write!(f, "]")
    }
}
