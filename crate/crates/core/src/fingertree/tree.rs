//! Structural core of the finger tree.
//!
//! Every level of the spine stores `Node`s; level 0 holds `Leaf` nodes and
//! level `k + 1` holds `Branch` nodes whose children live at level `k`. This
//! keeps the recursion on one concrete type instead of the nested
//! `FingerTree<M, Node<M, E>>` of the textbook presentation, which would
//! require polymorphic recursion. Level discipline is checked by `audit`.

use std::sync::Arc;

use arrayvec::ArrayVec;

use super::{AuditError, Disjunctive, Measure};

pub(crate) enum Node<M, E> {
    Leaf(E),
    Branch(Arc<Branch<M, E>>),
}

pub(crate) struct Branch<M, E> {
    measure: M,
    children: ArrayVec<Node<M, E>, 3>,
}

pub(crate) type Digit<M, E> = ArrayVec<Node<M, E>, 4>;

pub(crate) enum Tree<M, E> {
    Empty,
    Single(Node<M, E>),
    Deep(Arc<Deep<M, E>>),
}

pub(crate) struct Deep<M, E> {
    measure: M,
    prefix: Digit<M, E>,
    middle: Tree<M, E>,
    suffix: Digit<M, E>,
}

impl<M, E: Clone> Clone for Node<M, E> {
    fn clone(&self) -> Self {
        match self {
            Node::Leaf(e) => Node::Leaf(e.clone()),
            Node::Branch(b) => Node::Branch(Arc::clone(b)),
        }
    }
}

impl<M, E: Clone> Clone for Tree<M, E> {
    fn clone(&self) -> Self {
        match self {
            Tree::Empty => Tree::Empty,
            Tree::Single(n) => Tree::Single(n.clone()),
            Tree::Deep(d) => Tree::Deep(Arc::clone(d)),
        }
    }
}

fn fold<M: Measure<E>, E: Clone>(nodes: &[Node<M, E>]) -> M {
    nodes
        .iter()
        .map(Node::measure)
        .reduce(|acc, m| acc.combine(&m))
        .unwrap_or_else(M::empty)
}

fn digit<M, E: Clone>(nodes: &[Node<M, E>]) -> Digit<M, E> {
    nodes.iter().cloned().collect()
}

impl<M: Measure<E>, E: Clone> Node<M, E> {
    pub(crate) fn measure(&self) -> M {
        match self {
            Node::Leaf(e) => M::measure_of(e),
            Node::Branch(b) => b.measure.clone(),
        }
    }

    fn holds<D: Disjunctive<M, E>>(&self, probe: &D) -> bool {
        match self {
            Node::Leaf(e) => probe.holds_for(e),
            Node::Branch(b) => probe.holds(&b.measure),
        }
    }

    fn branch(children: &[Node<M, E>]) -> Self {
        debug_assert!((2..=3).contains(&children.len()));
        Node::Branch(Arc::new(Branch {
            measure: fold(children),
            children: children.iter().cloned().collect(),
        }))
    }

    fn children(&self) -> &[Node<M, E>] {
        match self {
            Node::Branch(b) => &b.children,
            Node::Leaf(_) => unreachable!("leaf found above level 0"),
        }
    }

    fn leftmost(&self) -> &Node<M, E> {
        let mut n = self;
        while let Node::Branch(b) = n {
            n = &b.children[0];
        }
        n
    }

    fn rightmost(&self) -> &Node<M, E> {
        let mut n = self;
        while let Node::Branch(b) = n {
            n = &b.children[b.children.len() - 1];
        }
        n
    }

    pub(crate) fn element(&self) -> &E {
        match self.leftmost() {
            Node::Leaf(e) => e,
            Node::Branch(_) => unreachable!(),
        }
    }

    fn audit(&self, level: usize) -> Result<M, AuditError>
    where
        M: PartialEq,
    {
        match (self, level) {
            (Node::Leaf(e), 0) => Ok(M::measure_of(e)),
            (Node::Branch(b), l) if l > 0 => {
                if !(2..=3).contains(&b.children.len()) {
                    return Err(AuditError::NodeArity {
                        level,
                        len: b.children.len(),
                    });
                }
                let folded = audit_all(&b.children, level - 1)?;
                if folded != b.measure {
                    return Err(AuditError::MeasureMismatch { level });
                }
                Ok(folded)
            }
            _ => Err(AuditError::LevelMismatch { level }),
        }
    }
}

fn audit_all<M, E>(nodes: &[Node<M, E>], level: usize) -> Result<M, AuditError>
where
    M: Measure<E> + PartialEq,
    E: Clone,
{
    let mut acc: Option<M> = None;
    for n in nodes {
        let m = n.audit(level)?;
        acc = Some(match acc {
            None => m,
            Some(a) => a.combine(&m),
        });
    }
    Ok(acc.unwrap_or_else(M::empty))
}

/// Groups 2..=12 nodes into 2-3 branches, preserving order.
fn make_branches<M: Measure<E>, E: Clone>(xs: &[Node<M, E>]) -> Vec<Node<M, E>> {
    let mut out = Vec::with_capacity(xs.len() / 2);
    let mut rest = xs;
    loop {
        match rest.len() {
            2 | 3 => {
                out.push(Node::branch(rest));
                return out;
            }
            4 => {
                out.push(Node::branch(&rest[..2]));
                out.push(Node::branch(&rest[2..]));
                return out;
            }
            n => {
                debug_assert!(n > 4);
                out.push(Node::branch(&rest[..3]));
                rest = &rest[3..];
            }
        }
    }
}

/// First index `i` where `pred(before ⊕ xs[..=i], xs[i+1..] ⊕ after)` holds.
fn search_digit<M, E, P>(xs: &[Node<M, E>], before: &M, after: &M, pred: &mut P) -> Option<usize>
where
    M: Measure<E>,
    E: Clone,
    P: FnMut(&M, &M) -> bool,
{
    let measures: Vec<M> = xs.iter().map(Node::measure).collect();
    let mut afters = vec![after.clone(); xs.len()];
    for i in (0..xs.len().saturating_sub(1)).rev() {
        afters[i] = measures[i + 1].combine(&afters[i + 1]);
    }
    let mut acc = before.clone();
    for (i, m) in measures.iter().enumerate() {
        acc = acc.combine(m);
        if pred(&acc, &afters[i]) {
            return Some(i);
        }
    }
    None
}

impl<M: Measure<E>, E: Clone> Tree<M, E> {
    pub(crate) fn is_empty(&self) -> bool {
        matches!(self, Tree::Empty)
    }

    pub(crate) fn measure(&self) -> M {
        match self {
            Tree::Empty => M::empty(),
            Tree::Single(n) => n.measure(),
            Tree::Deep(d) => d.measure.clone(),
        }
    }

    fn deep_with(measure: M, prefix: Digit<M, E>, middle: Tree<M, E>, suffix: Digit<M, E>) -> Self {
        debug_assert!(!prefix.is_empty() && !suffix.is_empty());
        Tree::Deep(Arc::new(Deep {
            measure,
            prefix,
            middle,
            suffix,
        }))
    }

    fn deep(prefix: Digit<M, E>, middle: Tree<M, E>, suffix: Digit<M, E>) -> Self {
        let mut m = fold(&prefix);
        if !middle.is_empty() {
            m = m.combine(&middle.measure());
        }
        m = m.combine(&fold(&suffix));
        Self::deep_with(m, prefix, middle, suffix)
    }

    fn from_nodes(xs: &[Node<M, E>]) -> Self {
        match xs.len() {
            0 => Tree::Empty,
            1 => Tree::Single(xs[0].clone()),
            2 => Self::deep(digit(&xs[..1]), Tree::Empty, digit(&xs[1..])),
            3 => Self::deep(digit(&xs[..2]), Tree::Empty, digit(&xs[2..])),
            4 => Self::deep(digit(&xs[..2]), Tree::Empty, digit(&xs[2..])),
            n => unreachable!("digit of length {n}"),
        }
    }

    pub(crate) fn holds<D: Disjunctive<M, E>>(&self, probe: &D) -> bool {
        match self {
            Tree::Empty => false,
            Tree::Single(n) => n.holds(probe),
            Tree::Deep(d) => probe.holds(&d.measure),
        }
    }

    pub(crate) fn push_front(&self, a: Node<M, E>) -> Self {
        match self {
            Tree::Empty => Tree::Single(a),
            Tree::Single(b) => {
                let m = a.measure().combine(&b.measure());
                Self::deep_with(m, digit(&[a]), Tree::Empty, digit(std::slice::from_ref(b)))
            }
            Tree::Deep(d) => {
                let m = a.measure().combine(&d.measure);
                if d.prefix.len() < 4 {
                    let mut prefix = Digit::new();
                    prefix.push(a);
                    prefix.extend(d.prefix.iter().cloned());
                    Self::deep_with(m, prefix, d.middle.clone(), d.suffix.clone())
                } else {
                    let spill = Node::branch(&d.prefix[1..]);
                    let prefix = digit(&[a, d.prefix[0].clone()]);
                    Self::deep_with(m, prefix, d.middle.push_front(spill), d.suffix.clone())
                }
            }
        }
    }

    pub(crate) fn push_back(&self, a: Node<M, E>) -> Self {
        match self {
            Tree::Empty => Tree::Single(a),
            Tree::Single(b) => {
                let m = b.measure().combine(&a.measure());
                Self::deep_with(m, digit(std::slice::from_ref(b)), Tree::Empty, digit(&[a]))
            }
            Tree::Deep(d) => {
                let m = d.measure.combine(&a.measure());
                if d.suffix.len() < 4 {
                    let mut suffix = d.suffix.clone();
                    suffix.push(a);
                    Self::deep_with(m, d.prefix.clone(), d.middle.clone(), suffix)
                } else {
                    let spill = Node::branch(&d.suffix[..3]);
                    let suffix = digit(&[d.suffix[3].clone(), a]);
                    Self::deep_with(m, d.prefix.clone(), d.middle.push_back(spill), suffix)
                }
            }
        }
    }

    pub(crate) fn front(&self) -> Option<&Node<M, E>> {
        match self {
            Tree::Empty => None,
            Tree::Single(n) => Some(n),
            Tree::Deep(d) => Some(&d.prefix[0]),
        }
    }

    pub(crate) fn back(&self) -> Option<&Node<M, E>> {
        match self {
            Tree::Empty => None,
            Tree::Single(n) => Some(n),
            Tree::Deep(d) => d.suffix.last(),
        }
    }

    pub(crate) fn view_front(&self) -> Option<(Node<M, E>, Self)> {
        match self {
            Tree::Empty => None,
            Tree::Single(n) => Some((n.clone(), Tree::Empty)),
            Tree::Deep(d) => {
                let rest = Self::deep_left(&d.prefix[1..], &d.middle, d.suffix.clone());
                Some((d.prefix[0].clone(), rest))
            }
        }
    }

    pub(crate) fn view_back(&self) -> Option<(Self, Node<M, E>)> {
        match self {
            Tree::Empty => None,
            Tree::Single(n) => Some((Tree::Empty, n.clone())),
            Tree::Deep(d) => {
                let k = d.suffix.len() - 1;
                let rest = Self::deep_right(d.prefix.clone(), &d.middle, &d.suffix[..k]);
                Some((rest, d.suffix[k].clone()))
            }
        }
    }

    /// Rebuilds a deep tree whose prefix may have been emptied, borrowing a
    /// branch from the middle when needed.
    fn deep_left(prefix: &[Node<M, E>], middle: &Self, suffix: Digit<M, E>) -> Self {
        if !prefix.is_empty() {
            return Self::deep(digit(prefix), middle.clone(), suffix);
        }
        match middle.view_front() {
            None => Self::from_nodes(&suffix),
            Some((node, rest)) => {
                let Node::Branch(b) = &node else {
                    unreachable!("leaf in middle spine")
                };
                let mut m = b.measure.clone();
                if !rest.is_empty() {
                    m = m.combine(&rest.measure());
                }
                m = m.combine(&fold(&suffix));
                Self::deep_with(m, digit(&b.children), rest, suffix)
            }
        }
    }

    fn deep_right(prefix: Digit<M, E>, middle: &Self, suffix: &[Node<M, E>]) -> Self {
        if !suffix.is_empty() {
            return Self::deep(prefix, middle.clone(), digit(suffix));
        }
        match middle.view_back() {
            None => Self::from_nodes(&prefix),
            Some((rest, node)) => {
                let Node::Branch(b) = &node else {
                    unreachable!("leaf in middle spine")
                };
                let mut m = fold(&prefix);
                if !rest.is_empty() {
                    m = m.combine(&rest.measure());
                }
                m = m.combine(&b.measure);
                Self::deep_with(m, prefix, rest, digit(&b.children))
            }
        }
    }

    pub(crate) fn append3(left: &Self, mid: Vec<Node<M, E>>, right: &Self) -> Self {
        match (left, right) {
            (Tree::Empty, _) => mid
                .into_iter()
                .rev()
                .fold(right.clone(), |t, n| t.push_front(n)),
            (_, Tree::Empty) => mid.into_iter().fold(left.clone(), |t, n| t.push_back(n)),
            (Tree::Single(x), _) => mid
                .into_iter()
                .rev()
                .fold(right.clone(), |t, n| t.push_front(n))
                .push_front(x.clone()),
            (_, Tree::Single(y)) => mid
                .into_iter()
                .fold(left.clone(), |t, n| t.push_back(n))
                .push_back(y.clone()),
            (Tree::Deep(a), Tree::Deep(b)) => {
                let mut seam: Vec<Node<M, E>> =
                    Vec::with_capacity(a.suffix.len() + mid.len() + b.prefix.len());
                seam.extend(a.suffix.iter().cloned());
                seam.extend(mid);
                seam.extend(b.prefix.iter().cloned());
                let middle = Self::append3(&a.middle, make_branches(&seam), &b.middle);
                Self::deep(a.prefix.clone(), middle, b.suffix.clone())
            }
        }
    }

    /// Splits around the first node whose measure satisfies `probe`.
    /// Caller guarantees `self.holds(probe)`.
    pub(crate) fn split_by<D: Disjunctive<M, E>>(&self, probe: &D) -> (Self, Node<M, E>, Self) {
        match self {
            Tree::Empty => unreachable!("split of empty tree"),
            Tree::Single(x) => (Tree::Empty, x.clone(), Tree::Empty),
            Tree::Deep(d) => {
                if let Some(i) = d.prefix.iter().position(|n| n.holds(probe)) {
                    let left = Self::from_nodes(&d.prefix[..i]);
                    let right = Self::deep_left(&d.prefix[i + 1..], &d.middle, d.suffix.clone());
                    return (left, d.prefix[i].clone(), right);
                }
                if d.middle.holds(probe) {
                    let (ml, node, mr) = d.middle.split_by(probe);
                    let children = node.children();
                    let j = children
                        .iter()
                        .position(|c| c.holds(probe))
                        .unwrap_or(children.len() - 1);
                    let left = Self::deep_right(d.prefix.clone(), &ml, &children[..j]);
                    let right = Self::deep_left(&children[j + 1..], &mr, d.suffix.clone());
                    return (left, children[j].clone(), right);
                }
                let i = d
                    .suffix
                    .iter()
                    .position(|n| n.holds(probe))
                    .unwrap_or(d.suffix.len() - 1);
                let left = Self::deep_right(d.prefix.clone(), &d.middle, &d.suffix[..i]);
                let right = Self::from_nodes(&d.suffix[i + 1..]);
                (left, d.suffix[i].clone(), right)
            }
        }
    }

    /// Locates the first node satisfying `probe` without building split sides.
    pub(crate) fn locate<D: Disjunctive<M, E>>(&self, probe: &D) -> Option<&Node<M, E>> {
        match self {
            Tree::Empty => None,
            Tree::Single(x) => x.holds(probe).then_some(x),
            Tree::Deep(d) => {
                if let Some(n) = d.prefix.iter().find(|n| n.holds(probe)) {
                    return Some(n);
                }
                if d.middle.holds(probe) {
                    if let Some(found) = d.middle.locate(probe) {
                        if let Some(c) = found.children().iter().find(|c| c.holds(probe)) {
                            return Some(c);
                        }
                    }
                }
                d.suffix.iter().find(|n| n.holds(probe))
            }
        }
    }

    /// General split on a predicate over (before, after) measures. Caller
    /// guarantees `pred(before ⊕ self, after)` holds.
    pub(crate) fn split_general<P>(
        &self,
        pred: &mut P,
        before: &M,
        after: &M,
    ) -> (Self, Node<M, E>, Self)
    where
        P: FnMut(&M, &M) -> bool,
    {
        match self {
            Tree::Empty => unreachable!("split of empty tree"),
            Tree::Single(x) => (Tree::Empty, x.clone(), Tree::Empty),
            Tree::Deep(d) => {
                let m_mid = d.middle.measure();
                let m_suffix = fold(&d.suffix);
                let after_suffix = m_suffix.combine(after);
                let after_prefix = m_mid.combine(&after_suffix);
                if let Some(i) = search_digit(&d.prefix, before, &after_prefix, pred) {
                    let left = Self::from_nodes(&d.prefix[..i]);
                    let right = Self::deep_left(&d.prefix[i + 1..], &d.middle, d.suffix.clone());
                    return (left, d.prefix[i].clone(), right);
                }
                let v_prefix = before.combine(&fold(&d.prefix));
                let v_middle = v_prefix.combine(&m_mid);
                if !d.middle.is_empty() && pred(&v_middle, &after_suffix) {
                    let (ml, node, mr) = d.middle.split_general(pred, &v_prefix, &after_suffix);
                    let children = node.children();
                    let inner_before = v_prefix.combine(&ml.measure());
                    let inner_after = mr.measure().combine(&after_suffix);
                    let j = search_digit(children, &inner_before, &inner_after, pred)
                        .unwrap_or(children.len() - 1);
                    let left = Self::deep_right(d.prefix.clone(), &ml, &children[..j]);
                    let right = Self::deep_left(&children[j + 1..], &mr, d.suffix.clone());
                    return (left, children[j].clone(), right);
                }
                let i =
                    search_digit(&d.suffix, &v_middle, after, pred).unwrap_or(d.suffix.len() - 1);
                let left = Self::deep_right(d.prefix.clone(), &d.middle, &d.suffix[..i]);
                let right = Self::from_nodes(&d.suffix[i + 1..]);
                (left, d.suffix[i].clone(), right)
            }
        }
    }

    pub(crate) fn first_leaf(&self) -> Option<&E> {
        self.front().map(|n| n.leftmost().element())
    }

    pub(crate) fn last_leaf(&self) -> Option<&E> {
        self.back().map(|n| match n.rightmost() {
            Node::Leaf(e) => e,
            Node::Branch(_) => unreachable!(),
        })
    }

    pub(crate) fn audit(&self, level: usize) -> Result<M, AuditError>
    where
        M: PartialEq,
    {
        match self {
            Tree::Empty => Ok(M::empty()),
            Tree::Single(n) => n.audit(level),
            Tree::Deep(d) => {
                for part in [&d.prefix, &d.suffix] {
                    if !(1..=4).contains(&part.len()) {
                        return Err(AuditError::DigitArity {
                            level,
                            len: part.len(),
                        });
                    }
                }
                let p = audit_all(&d.prefix, level)?;
                let m = d.middle.audit(level + 1)?;
                let s = audit_all(&d.suffix, level)?;
                let folded = p.combine(&m).combine(&s);
                if folded != d.measure {
                    return Err(AuditError::MeasureMismatch { level });
                }
                Ok(folded)
            }
        }
    }
}

enum Work<'a, M, E> {
    Tree(&'a Tree<M, E>),
    Node(&'a Node<M, E>),
}

/// In-order iterator over the elements of a finger tree.
pub struct Iter<'a, M, E> {
    stack: Vec<Work<'a, M, E>>,
}

impl<'a, M, E> Iter<'a, M, E> {
    pub(crate) fn new(tree: &'a Tree<M, E>) -> Self {
        Iter {
            stack: vec![Work::Tree(tree)],
        }
    }
}

impl<'a, M, E> Iterator for Iter<'a, M, E> {
    type Item = &'a E;

    fn next(&mut self) -> Option<&'a E> {
        loop {
            match self.stack.pop()? {
                Work::Tree(Tree::Empty) => {}
                Work::Tree(Tree::Single(n)) => self.stack.push(Work::Node(n)),
                Work::Tree(Tree::Deep(d)) => {
                    self.stack.extend(d.suffix.iter().rev().map(Work::Node));
                    self.stack.push(Work::Tree(&d.middle));
                    self.stack.extend(d.prefix.iter().rev().map(Work::Node));
                }
                Work::Node(Node::Leaf(e)) => return Some(e),
                Work::Node(Node::Branch(b)) => {
                    self.stack.extend(b.children.iter().rev().map(Work::Node));
                }
            }
        }
    }
}
