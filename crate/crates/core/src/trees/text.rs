use super::{PlaneTree, TreeError};
use serde::{Deserialize, Serialize};

/// Nested-parenthesis form: one `( ... )` per vertex, children in plane order.
pub fn serialize(tree: &PlaneTree) -> String {
    let n = tree.size();
    let mut out = String::with_capacity(2 * n);
    // Closing a vertex happens when its last descendant has been emitted.
    let mut close_after: Vec<usize> = Vec::new();
    for u in 0..n {
        out.push('(');
        close_after.push(u + tree.subtree_size(u) - 1);
        while close_after.last() == Some(&u) {
            close_after.pop();
            out.push(')');
        }
    }
    out
}

pub fn parse(text: &str) -> Result<PlaneTree, TreeError> {
    let bytes = text.as_bytes();
    let err = |offset: usize, message: &str| TreeError::ParseError {
        offset,
        message: message.to_string(),
    };
    let start = bytes
        .iter()
        .position(|b| !b.is_ascii_whitespace())
        .ok_or_else(|| err(bytes.len(), "empty input"))?;
    let mut degrees: Vec<usize> = Vec::new();
    let mut open: Vec<usize> = Vec::new();
    let mut end = None;
    for (i, &b) in bytes.iter().enumerate().skip(start) {
        if end.is_some() {
            if b.is_ascii_whitespace() {
                continue;
            }
            return Err(err(i, "trailing characters after the root"));
        }
        match b {
            b'(' => {
                if let Some(&p) = open.last() {
                    degrees[p] += 1;
                }
                open.push(degrees.len());
                degrees.push(0);
            }
            b')' => {
                if open.pop().is_none() {
                    return Err(err(i, "unbalanced ')'"));
                }
                if open.is_empty() {
                    end = Some(i);
                }
            }
            _ if b.is_ascii_whitespace() => {}
            _ => return Err(err(i, "unexpected character")),
        }
        if degrees.is_empty() {
            return Err(err(i, "expected '('"));
        }
    }
    if end.is_none() {
        return Err(err(bytes.len(), "unterminated tree"));
    }
    Ok(PlaneTree::from_preorder_degrees_unchecked(&degrees))
}

/// JSON wire form `{"parents": [...]}` with `-1` for the root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParentsJson {
    pub parents: Vec<i64>,
}

impl From<&PlaneTree> for ParentsJson {
    fn from(tree: &PlaneTree) -> Self {
        Self { parents: tree.parents() }
    }
}

impl TryFrom<ParentsJson> for PlaneTree {
    type Error = TreeError;
    fn try_from(value: ParentsJson) -> Result<Self, TreeError> {
        PlaneTree::from_parents(&value.parents)
    }
}
