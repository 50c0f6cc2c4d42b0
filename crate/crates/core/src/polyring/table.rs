use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a generator inside its [`VariableTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub degree: u32,
}

/// Ordered registry of ring generators and their complex degrees.
///
/// Registration order is the variable order used by graded-lex comparisons:
/// the first registered generator is the most significant.
#[derive(Clone, PartialEq, Eq)]
pub struct VariableTable {
    entries: Vec<Variable>,
    by_name: HashMap<String, Var>,
}

impl VariableTable {
    pub fn new<I, S>(entries: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut table = VariableTable {
            entries: Vec::new(),
            by_name: HashMap::new(),
        };
        for (name, degree) in entries {
            let name = name.into();
            if degree == 0 {
                return Err(Error::InvalidTable(format!("`{name}` has degree 0")));
            }
            if !is_identifier(&name) {
                return Err(Error::InvalidTable(format!(
                    "`{name}` is not an identifier"
                )));
            }
            let var = Var(table.entries.len());
            if table.by_name.insert(name.clone(), var).is_some() {
                return Err(Error::InvalidTable(format!("duplicate name `{name}`")));
            }
            table.entries.push(Variable { name, degree });
        }
        Ok(Arc::new(table))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn name(&self, var: Var) -> &str {
        &self.entries[var.0].name
    }

    pub fn degree(&self, var: Var) -> u32 {
        self.entries[var.0].degree
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        self.by_name.get(name).copied()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        (0..self.entries.len()).map(Var)
    }

    pub fn entries(&self) -> &[Variable] {
        &self.entries
    }
}

impl fmt::Debug for VariableTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.entries.iter().map(|v| (&v.name, v.degree)))
            .finish()
    }
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn same_table(a: &Arc<VariableTable>, b: &Arc<VariableTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
