//! Nested ovals as unlabeled unordered rooted forests.
//!
//! On the wire a forest is an array of ovals and an oval is the array of its
//! children, so a nest of two is `[[[]]]` and two side-by-side ovals are `[[],[]]`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OvalForest(pub Vec<Oval>);

/// An oval together with the ovals lying directly inside it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Oval(pub OvalForest);

impl Oval {
    pub fn empty() -> Self {
        Oval::default()
    }

    pub fn with_children(children: Vec<Oval>) -> Self {
        Oval(OvalForest(children))
    }

    pub fn children(&self) -> &[Oval] {
        &(self.0).0
    }
}

impl OvalForest {
    pub fn new(roots: Vec<Oval>) -> Self {
        OvalForest(roots)
    }

    pub fn empty() -> Self {
        OvalForest::default()
    }

    /// `k` empty ovals side by side.
    pub fn empty_ovals(k: usize) -> Self {
        OvalForest(vec![Oval::empty(); k])
    }

    /// A chain of `depth` nested ovals whose innermost oval holds `inner`.
    pub fn nest(depth: usize, inner: OvalForest) -> Self {
        assert!(depth > 0);
        let mut current = Oval(inner);
        for _ in 1..depth {
            current = Oval::with_children(vec![current]);
        }
        OvalForest(vec![current])
    }

    pub fn roots(&self) -> &[Oval] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|o| 1 + o.0.size()).sum()
    }

    pub fn depth(&self) -> usize {
        self.0.iter().map(|o| 1 + o.0.depth()).max().unwrap_or(0)
    }

    /// Parenthesis encoding of the forest as given (not canonicalized).
    pub fn encoding(&self) -> String {
        let mut s = String::with_capacity(2 * self.size());
        self.write_encoding(&mut s);
        s
    }

    fn write_encoding(&self, out: &mut String) {
        for oval in &self.0 {
            out.push('(');
            oval.0.write_encoding(out);
            out.push(')');
        }
    }

    /// Recursively sorts children so that equal forests have equal encodings.
    pub fn canonical(&self) -> OvalForest {
        let mut keyed: Vec<(String, Oval)> = self
            .0
            .iter()
            .map(|o| {
                let child = Oval(o.0.canonical());
                let mut key = String::from("(");
                key.push_str(&child.0.encoding());
                key.push(')');
                (key, child)
            })
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        OvalForest(keyed.into_iter().map(|(_, o)| o).collect())
    }

    pub fn canonical_encoding(&self) -> String {
        self.canonical().encoding()
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }

    /// Parses a parenthesis encoding, e.g. `(())()`.
    pub fn from_encoding(s: &str) -> Option<OvalForest> {
        fn parse(bytes: &[u8], pos: &mut usize) -> Option<OvalForest> {
            let mut roots = Vec::new();
            while *pos < bytes.len() && bytes[*pos] == b'(' {
                *pos += 1;
                let children = parse(bytes, pos)?;
                if bytes.get(*pos) != Some(&b')') {
                    return None;
                }
                *pos += 1;
                roots.push(Oval(children));
            }
            Some(OvalForest(roots))
        }
        let bytes = s.as_bytes();
        let mut pos = 0;
        let f = parse(bytes, &mut pos)?;
        (pos == bytes.len()).then_some(f)
    }

    /// Ovals in preorder, each with its number of children.
    pub fn preorder_child_counts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size());
        fn walk(f: &OvalForest, out: &mut Vec<usize>) {
            for o in &f.0 {
                out.push(o.children().len());
                walk(&o.0, out);
            }
        }
        walk(self, &mut out);
        out
    }
}

/// Order on canonical forests: by size, then by encoding.
pub fn forest_order(a: &OvalForest, b: &OvalForest) -> Ordering {
    a.size()
        .cmp(&b.size())
        .then_with(|| a.encoding().cmp(&b.encoding()))
}

impl fmt::Display for OvalForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("∅")
        } else {
            f.write_str(&self.encoding())
        }
    }
}
