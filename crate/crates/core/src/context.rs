//! Formal contexts, derivation operators and column apposition.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::metrics;
use crate::sets::{self, AttributeSet, ObjectSet};

/// A formal context: named objects and attributes with an incidence bit-matrix.
///
/// Rows (object intents) and columns (attribute extents) are both stored so
/// that either derivation is a sequence of word-wise intersections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<AttributeSet>,
    columns: Vec<ObjectSet>,
}

/// A single attribute column `(G, {n}, J)` given by its name and extent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeColumn {
    pub name: String,
    pub extent: ObjectSet,
}

impl AttributeColumn {
    pub fn new(name: impl Into<String>, extent: ObjectSet) -> Self {
        Self {
            name: name.into(),
            extent,
        }
    }
}

fn check_distinct(kind: &'static str, names: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(names.len());
    for name in names {
        if !seen.insert(name.as_str()) {
            return Err(Error::DuplicateName {
                kind,
                name: name.clone(),
            });
        }
    }
    Ok(())
}

impl FormalContext {
    /// Builds a context from object rows; `rows[g]` is the intent of object `g`.
    pub fn from_rows(objects: Vec<String>, attributes: Vec<String>, rows: Vec<AttributeSet>) -> Result<Self> {
        check_distinct("object", &objects)?;
        check_distinct("attribute", &attributes)?;
        if rows.len() != objects.len() {
            return Err(Error::UniverseMismatch {
                expected: objects.len(),
                actual: rows.len(),
            });
        }
        let mut columns = vec![sets::empty(objects.len()); attributes.len()];
        for (g, row) in rows.iter().enumerate() {
            if row.len() != attributes.len() {
                return Err(Error::UniverseMismatch {
                    expected: attributes.len(),
                    actual: row.len(),
                });
            }
            for m in row.ones() {
                columns[m].insert(g);
            }
        }
        Ok(Self {
            objects,
            attributes,
            rows,
            columns,
        })
    }

    /// Builds a context from cross-table rows such as `"X.X"`.
    pub fn from_table<S: AsRef<str>>(objects: &[S], attributes: &[S], table: &[&str]) -> Result<Self> {
        let objects: Vec<String> = objects.iter().map(|s| s.as_ref().to_owned()).collect();
        let attributes: Vec<String> = attributes.iter().map(|s| s.as_ref().to_owned()).collect();
        if table.len() != objects.len() {
            return Err(Error::UniverseMismatch {
                expected: objects.len(),
                actual: table.len(),
            });
        }
        let mut rows = Vec::with_capacity(table.len());
        for (i, line) in table.iter().enumerate() {
            let chars: Vec<char> = line.chars().collect();
            if chars.len() != attributes.len() {
                return Err(Error::UniverseMismatch {
                    expected: attributes.len(),
                    actual: chars.len(),
                });
            }
            let mut row = sets::empty(attributes.len());
            for (m, c) in chars.into_iter().enumerate() {
                match c {
                    'X' | 'x' => row.insert(m),
                    '.' => {}
                    other => return Err(Error::parse(i + 1, format!("illegal cross-table character {other:?}"))),
                }
            }
            rows.push(row);
        }
        Self::from_rows(objects, attributes, rows)
    }

    pub fn empty() -> Self {
        Self {
            objects: Vec::new(),
            attributes: Vec::new(),
            rows: Vec::new(),
            columns: Vec::new(),
        }
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn attribute_count(&self) -> usize {
        self.attributes.len()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a == name)
    }

    pub fn incident(&self, object: usize, attribute: usize) -> bool {
        self.rows[object].contains(attribute)
    }

    /// `g^I`
    pub fn object_intent(&self, object: usize) -> &AttributeSet {
        &self.rows[object]
    }

    /// `m^I`
    pub fn attribute_extent(&self, attribute: usize) -> &ObjectSet {
        &self.columns[attribute]
    }

    pub fn all_objects(&self) -> ObjectSet {
        sets::full(self.object_count())
    }

    pub fn all_attributes(&self) -> AttributeSet {
        sets::full(self.attribute_count())
    }

    /// Resolves object names to an object set.
    pub fn object_set<S: AsRef<str>>(&self, names: &[S]) -> Result<ObjectSet> {
        let mut set = sets::empty(self.object_count());
        for name in names {
            let g = self
                .object_index(name.as_ref())
                .ok_or_else(|| Error::object_not_found(name.as_ref()))?;
            set.insert(g);
        }
        Ok(set)
    }

    /// Resolves attribute names to an attribute set.
    pub fn attribute_set<S: AsRef<str>>(&self, names: &[S]) -> Result<AttributeSet> {
        let mut set = sets::empty(self.attribute_count());
        for name in names {
            let m = self
                .attribute_index(name.as_ref())
                .ok_or_else(|| Error::attribute_not_found(name.as_ref()))?;
            set.insert(m);
        }
        Ok(set)
    }

    pub fn object_names(&self, set: &ObjectSet) -> Vec<String> {
        set.ones().map(|g| self.objects[g].clone()).collect()
    }

    pub fn attribute_names(&self, set: &AttributeSet) -> Vec<String> {
        set.ones().map(|m| self.attributes[m].clone()).collect()
    }

    /// `A^I`: the attributes shared by every object of `objects`.
    pub fn derive_attributes(&self, objects: &ObjectSet) -> AttributeSet {
        assert_eq!(
            objects.len(),
            self.object_count(),
            "object set over a different universe"
        );
        metrics::bump_derivations();
        let mut out = self.all_attributes();
        for g in objects.ones() {
            out.intersect_with(&self.rows[g]);
        }
        out
    }

    /// `B^I`: the objects having every attribute of `attributes`.
    pub fn derive_objects(&self, attributes: &AttributeSet) -> ObjectSet {
        assert_eq!(
            attributes.len(),
            self.attribute_count(),
            "attribute set over a different universe"
        );
        metrics::bump_derivations();
        let mut out = self.all_objects();
        for m in attributes.ones() {
            out.intersect_with(&self.columns[m]);
        }
        out
    }

    /// `B^II`
    pub fn closure_intent(&self, attributes: &AttributeSet) -> AttributeSet {
        self.derive_attributes(&self.derive_objects(attributes))
    }

    /// `A^II`
    pub fn closure_extent(&self, objects: &ObjectSet) -> ObjectSet {
        self.derive_objects(&self.derive_attributes(objects))
    }

    /// The apposition `K|C`; the new attribute becomes the last column.
    pub fn apposition(&self, column: &AttributeColumn) -> Result<Self> {
        if self.attribute_index(&column.name).is_some() {
            return Err(Error::NameCollision(column.name.clone()));
        }
        if column.extent.len() != self.object_count() {
            return Err(Error::UniverseMismatch {
                expected: self.object_count(),
                actual: column.extent.len(),
            });
        }
        let mut attributes = self.attributes.clone();
        attributes.push(column.name.clone());
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(g, row)| sets::with_appended(row, column.extent.contains(g)))
            .collect();
        let mut columns = self.columns.clone();
        columns.push(column.extent.clone());
        Ok(Self {
            objects: self.objects.clone(),
            attributes,
            rows,
            columns,
        })
    }

    /// Inverse of [`apposition`](Self::apposition): detaches the named column
    /// and keeps the remaining attributes in their original order.
    pub fn split_column(&self, name: &str) -> Result<(Self, AttributeColumn)> {
        let index = self
            .attribute_index(name)
            .ok_or_else(|| Error::attribute_not_found(name))?;
        let mut attributes = self.attributes.clone();
        attributes.remove(index);
        let rows = self.rows.iter().map(|row| sets::without_index(row, index)).collect();
        let mut columns = self.columns.clone();
        let extent = columns.remove(index);
        Ok((
            Self {
                objects: self.objects.clone(),
                attributes,
                rows,
                columns,
            },
            AttributeColumn::new(name, extent),
        ))
    }

    /// The column of an existing attribute.
    pub fn column(&self, name: &str) -> Result<AttributeColumn> {
        let index = self
            .attribute_index(name)
            .ok_or_else(|| Error::attribute_not_found(name))?;
        Ok(AttributeColumn::new(name, self.columns[index].clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn objs(k: &FormalContext, names: &[&str]) -> ObjectSet {
        k.object_set(names).unwrap()
    }

    fn atts(k: &FormalContext, names: &[&str]) -> AttributeSet {
        k.attribute_set(names).unwrap()
    }

    #[test]
    fn derive_attributes_on_k2() {
        let k = fixtures::k2();
        assert_eq!(k.derive_attributes(&objs(&k, &["g1"])), atts(&k, &["a", "b"]));
        assert_eq!(k.derive_attributes(&objs(&k, &[])), k.all_attributes());
        assert_eq!(k.derive_attributes(&objs(&k, &["g1", "g2"])), atts(&k, &["b"]));
    }

    #[test]
    fn derive_objects_on_k2() {
        let k = fixtures::k2();
        assert_eq!(k.derive_objects(&atts(&k, &["b"])), objs(&k, &["g1", "g2"]));
        assert_eq!(k.derive_objects(&atts(&k, &[])), k.all_objects());
        assert_eq!(k.derive_objects(&atts(&k, &["a", "b"])), objs(&k, &["g1"]));
    }

    #[test]
    fn closure_on_k2() {
        let k = fixtures::k2();
        assert_eq!(k.closure_intent(&atts(&k, &["a"])), atts(&k, &["a", "b"]));
        assert_eq!(k.closure_intent(&atts(&k, &[])), atts(&k, &["b"]));
        let closed = k.closure_intent(&atts(&k, &["a"]));
        assert_eq!(k.closure_intent(&closed), closed);
    }

    #[test]
    fn empty_context_derivations() {
        let k = FormalContext::from_table(&["g"], &[] as &[&str], &[""]).unwrap();
        assert_eq!(k.derive_objects(&sets::empty(0)), sets::full(1));
        assert_eq!(k.derive_attributes(&sets::full(1)).len(), 0);
        let k0 = FormalContext::empty();
        assert_eq!(k0.derive_attributes(&sets::empty(0)).len(), 0);
    }

    #[test]
    #[should_panic(expected = "different universe")]
    fn universe_mismatch_panics() {
        let k = fixtures::k2();
        k.derive_attributes(&sets::empty(3));
    }

    #[test]
    fn apposition_builds_k2d() {
        let k = fixtures::k2();
        let d = AttributeColumn::new("d", objs(&k, &["g2"]));
        assert_eq!(k.apposition(&d).unwrap(), fixtures::k2d());
    }

    #[test]
    fn apposition_empty_extent_is_blank_column() {
        let k = fixtures::k2();
        let z = AttributeColumn::new("z", sets::empty(2));
        let kz = k.apposition(&z).unwrap();
        assert_eq!(kz.attribute_extent(2).count_ones(..), 0);
        assert_eq!(kz.attributes().last().unwrap(), "z");
    }

    #[test]
    fn apposition_free_distributive_matches_full_table() {
        let (old, z) = fixtures::free_distributive();
        assert_eq!(old.apposition(&z).unwrap(), fixtures::free_distributive_full());
    }

    #[test]
    fn apposition_rejects_duplicates_and_bad_length() {
        let k = fixtures::k2();
        let a = AttributeColumn::new("a", sets::empty(2));
        assert_eq!(k.apposition(&a), Err(Error::NameCollision("a".into())));
        let bad = AttributeColumn::new("q", sets::empty(5));
        assert!(matches!(k.apposition(&bad), Err(Error::UniverseMismatch { .. })));
    }

    #[test]
    fn split_column_inverts_apposition() {
        let (k, d) = fixtures::k2d().split_column("d").unwrap();
        assert_eq!(k, fixtures::k2());
        assert_eq!(d.extent, objs(&k, &["g2"]));

        let (rest, a) = fixtures::k2().split_column("a").unwrap();
        assert_eq!(rest.attributes(), &["b".to_string()]);
        assert_eq!(a.extent, objs(&rest, &["g1"]));

        assert!(matches!(fixtures::k2().split_column("zz"), Err(Error::NotFound { .. })));
    }

    #[test]
    fn split_middle_column_keeps_order() {
        let k = fixtures::free_distributive_full();
        let (rest, col) = k.split_column("x|z").unwrap();
        assert_eq!(rest.attribute_count(), 6);
        assert_eq!(
            rest.attributes(),
            &["x|y|z", "x|y", "y|z", "x", "y", "z"].map(String::from)
        );
        assert_eq!(col.extent, *k.attribute_extent(2));
        // not equal to the original because order changed, but same incidences
        for g in 0..k.object_count() {
            for (m, name) in rest.attributes().iter().enumerate() {
                let orig = k.attribute_index(name).unwrap();
                assert_eq!(rest.incident(g, m), k.incident(g, orig));
            }
        }
    }

    #[test]
    fn duplicate_names_rejected() {
        let r = FormalContext::from_table(&["g", "g"], &["a"], &["X", "."]);
        assert!(matches!(r, Err(Error::DuplicateName { kind: "object", .. })));
    }
}
