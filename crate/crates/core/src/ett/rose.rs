use crate::measure::VertexId;

/// A rooted tree with ordered children; input format for building tours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoseTree {
    pub label: VertexId,
    pub children: Vec<RoseTree>,
}

impl RoseTree {
    pub fn leaf(label: VertexId) -> Self {
        RoseTree {
            label,
            children: Vec::new(),
        }
    }

    pub fn node(label: VertexId, children: Vec<RoseTree>) -> Self {
        RoseTree { label, children }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        let mut n = 0;
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            n += 1;
            stack.extend(&t.children);
        }
        n
    }

    /// Labels in preorder.
    pub fn labels(&self) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            out.push(t.label);
            stack.extend(t.children.iter().rev());
        }
        out
    }

    /// Undirected edges as `(parent, child)`.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            for c in &t.children {
                out.push((t.label, c.label));
                stack.push(c);
            }
        }
        out
    }
}
