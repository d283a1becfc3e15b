//! JSON input documents describing a category, an optional inverse table
//! and an optional selection for the matrix construction.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groupoid::{
    validate_category, CategoryDescription, CategoryError, FiniteCategory, FiniteGroupoid, MorphismId,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidDoc {
    #[serde(flatten)]
    pub category: CategoryDescription,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selection: Option<Vec<String>>,
}

#[derive(Debug, Error)]
pub enum DocError {
    #[error("malformed document at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Category(#[from] CategoryError),
}

impl GroupoidDoc {
    pub fn parse(text: &str) -> Result<Self, DocError> {
        serde_json::from_str(text).map_err(|e| DocError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn category(&self) -> Result<FiniteCategory, CategoryError> {
        validate_category(&self.category)
    }

    /// Validates as a groupoid, cross-checking any declared inverse table.
    pub fn groupoid(&self) -> Result<FiniteGroupoid, CategoryError> {
        let g = self.category()?.as_groupoid()?;
        if let Some(declared) = &self.inverse {
            g.check_declared_inverses(declared)?;
        }
        Ok(g)
    }
}

/// Resolves morphism names against a category.
pub fn resolve_names<S: AsRef<str>>(cat: &FiniteCategory, names: &[S]) -> Result<Vec<MorphismId>, CategoryError> {
    names
        .iter()
        .map(|n| {
            let n = n.as_ref().trim();
            cat.morphism_by_name(n)
                .ok_or_else(|| CategoryError::UnknownMorphism(n.to_string()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_documents_round_trip() {
        for name in fixtures::FIXTURE_NAMES {
            let doc = fixtures::doc(name).unwrap();
            let again = GroupoidDoc::parse(&doc.to_json()).unwrap();
            assert_eq!(again, doc);
            assert_eq!(again.category().unwrap(), doc.category().unwrap());
        }
    }

    #[test]
    fn syntax_errors_are_located() {
        match GroupoidDoc::parse("{\n  \"objects\": [1,") {
            Err(DocError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn declared_inverses_are_checked() {
        let mut doc = fixtures::doc("two-object").unwrap();
        doc.inverse = Some(BTreeMap::from([("t0".to_string(), "u0".to_string())]));
        assert!(doc.groupoid().is_ok());
        doc.inverse = Some(BTreeMap::from([("t0".to_string(), "u1".to_string())]));
        assert!(matches!(doc.groupoid(), Err(CategoryError::InverseMismatch { .. })));
    }
}
