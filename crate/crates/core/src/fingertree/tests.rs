use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;

/// Order-sensitive test monoid: length, sum and a polynomial hash.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Poly {
    len: u64,
    sum: u64,
    hash: u64,
}

const P: u64 = 1_000_000_007;
const B: u64 = 131;

fn pow_b(mut e: u64) -> u64 {
    let (mut base, mut acc) = (B, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % P;
        }
        base = base * base % P;
        e >>= 1;
    }
    acc
}

impl Monoid for Poly {
    fn empty() -> Self {
        Poly {
            len: 0,
            sum: 0,
            hash: 0,
        }
    }

    fn combine(&self, o: &Self) -> Self {
        Poly {
            len: self.len + o.len,
            sum: self.sum + o.sum,
            hash: (self.hash * pow_b(o.len) + o.hash) % P,
        }
    }
}

impl Measure<u32> for Poly {
    fn measure_of(x: &u32) -> Self {
        Poly {
            len: 1,
            sum: *x as u64,
            hash: (*x as u64 + 1) % P,
        }
    }
}

type Seq = FingerTree<Poly, u32>;

fn poly_of(xs: &[u32]) -> Poly {
    xs.iter()
        .map(Poly::measure_of)
        .fold(Poly::empty(), |a, b| a.combine(&b))
}

/// Set monoid for the disjunctive search.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Bag(BTreeSet<u32>);

impl Monoid for Bag {
    fn empty() -> Self {
        Bag(BTreeSet::new())
    }
    fn combine(&self, o: &Self) -> Self {
        Bag(self.0.union(&o.0).copied().collect())
    }
}

impl Measure<u32> for Bag {
    fn measure_of(x: &u32) -> Self {
        Bag(BTreeSet::from([*x]))
    }
}

struct Contains(u32);

impl Disjunctive<Bag, u32> for Contains {
    fn holds(&self, m: &Bag) -> bool {
        m.0.contains(&self.0)
    }
    fn holds_for(&self, x: &u32) -> bool {
        *x == self.0
    }
}

fn audited<M: Measure<E> + PartialEq + fmt::Debug, E: Clone>(t: &FingerTree<M, E>) {
    t.check_invariants().expect("audit");
}

#[test]
fn empty_tree() {
    let t = Seq::new();
    assert!(t.to_vec().is_empty());
    assert_eq!(t.measure(), Poly::empty());
    assert!(t.view_left().is_none());
    assert!(t.view_right().is_none());
    assert!(t.first().is_none());
    assert!(!t.search(|_, _| true).is_found());
    audited(&t);
}

#[test]
fn single_element_views() {
    let t = Seq::new().cons(7);
    let (x, rest) = t.view_left().unwrap();
    assert_eq!(x, 7);
    assert!(rest.is_empty());
    let (rest, y) = Seq::new().snoc(9).view_right().unwrap();
    assert_eq!(y, 9);
    assert!(rest.is_empty());
}

#[test]
fn small_orders() {
    let abc: Seq = [1, 2, 3].into_iter().collect();
    let (h, rest) = abc.view_left().unwrap();
    assert_eq!(h, 1);
    assert_eq!(rest.to_vec(), vec![2, 3]);
    let bc: Seq = [2, 3].into_iter().collect();
    assert_eq!(bc.cons(1).to_vec(), vec![1, 2, 3]);
    let ab: Seq = [1, 2].into_iter().collect();
    assert_eq!(ab.snoc(3).to_vec(), vec![1, 2, 3]);
    let a: Seq = [1].into_iter().collect();
    assert_eq!(a.concat(&bc).to_vec(), vec![1, 2, 3]);
    assert_eq!(Seq::new().concat(&abc), abc);
    assert_eq!(abc.concat(&Seq::new()), abc);
}

#[test]
fn persistence_of_old_versions() {
    let t1: Seq = (0..100).collect();
    let t2 = t1.cons(999);
    let t3 = t1.concat(&t2);
    let _ = t3.search(|b, _| b.len > 50);
    assert_eq!(t1.to_vec(), (0..100).collect::<Vec<_>>());
    assert_eq!(t2.len(), 101);
}

#[test]
fn search_absent_member_is_not_found() {
    let t: FingerTree<Bag, u32> = (0..50).collect();
    assert!(!t.search_by(&Contains(77)).is_found());
    assert!(t.find_by(&Contains(77)).is_none());
    assert!(!t.search(|b, _| b.0.contains(&77)).is_found());
    let e: FingerTree<Bag, u32> = FingerTree::new();
    assert!(!e.search_by(&Contains(1)).is_found());
}

#[test]
fn non_monotone_predicate_does_not_panic() {
    let t: Seq = (0..200).collect();
    for k in 0..20u64 {
        if let Some((l, x, r)) = t.search(|b, _| b.len % 3 == k % 3).found() {
            let mut all = l.to_vec();
            all.push(x);
            all.extend(r.to_vec());
            assert_eq!(all, t.to_vec());
        }
    }
}

#[test]
fn large_sequence_audit() {
    let mut t = Seq::new();
    for i in 0..5000u32 {
        t = if i % 3 == 0 { t.cons(i) } else { t.snoc(i) };
    }
    audited(&t);
    let (l, r) = (t.clone(), t.clone());
    audited(&l.concat(&r));
}

#[derive(Debug, Clone)]
enum Op {
    Cons(u32),
    Snoc(u32),
    PopLeft,
    PopRight,
    SelfConcat,
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        4 => any::<u32>().prop_map(Op::Cons),
        4 => any::<u32>().prop_map(Op::Snoc),
        2 => Just(Op::PopLeft),
        2 => Just(Op::PopRight),
        1 => Just(Op::SelfConcat),
    ]
}

proptest! {
    #[test]
    fn ops_agree_with_list_model(ops in prop::collection::vec(op(), 0..300)) {
        let mut t = Seq::new();
        let mut model: Vec<u32> = Vec::new();
        for o in ops {
            match o {
                Op::Cons(x) => { t = t.cons(x); model.insert(0, x); }
                Op::Snoc(x) => { t = t.snoc(x); model.push(x); }
                Op::PopLeft => match t.view_left() {
                    Some((x, rest)) => { prop_assert_eq!(x, model.remove(0)); t = rest; }
                    None => prop_assert!(model.is_empty()),
                },
                Op::PopRight => match t.view_right() {
                    Some((rest, x)) => { prop_assert_eq!(Some(x), model.pop()); t = rest; }
                    None => prop_assert!(model.is_empty()),
                },
                Op::SelfConcat if model.len() < 500 => {
                    t = t.concat(&t);
                    model.extend(model.clone());
                }
                Op::SelfConcat => {}
            }
            prop_assert_eq!(t.first(), model.first());
            prop_assert_eq!(t.last(), model.last());
        }
        prop_assert_eq!(t.to_vec(), model.clone());
        prop_assert_eq!(t.measure(), poly_of(&model));
        prop_assert!(t.check_invariants().is_ok());
    }

    #[test]
    fn concat_agrees_with_append(
        xs in prop::collection::vec(any::<u32>(), 0..400),
        ys in prop::collection::vec(any::<u32>(), 0..400),
    ) {
        let a: Seq = xs.iter().copied().collect();
        let b: Seq = ys.iter().copied().collect();
        let c = a.concat(&b);
        let mut model = xs.clone();
        model.extend(&ys);
        prop_assert_eq!(c.to_vec(), model.clone());
        prop_assert_eq!(c.measure(), poly_of(&model));
        prop_assert!(c.check_invariants().is_ok());
        if !xs.is_empty() {
            prop_assert_eq!(c.view_left().map(|p| p.0), a.view_left().map(|p| p.0));
        }
    }

    #[test]
    fn general_search_matches_linear_scan(
        xs in prop::collection::vec(0u32..1000, 0..400),
        threshold in 0u64..200_000,
    ) {
        let t: Seq = xs.iter().copied().collect();
        // before.sum > threshold is monotone in the split point
        let scan = (0..xs.len()).find(|&i| poly_of(&xs[..=i]).sum > threshold);
        match (t.search(|b, _| b.sum > threshold).found(), scan) {
            (Some((l, x, r)), Some(i)) => {
                prop_assert_eq!(l.to_vec(), xs[..i].to_vec());
                prop_assert_eq!(x, xs[i]);
                prop_assert_eq!(r.to_vec(), xs[i + 1..].to_vec());
                prop_assert!(l.check_invariants().is_ok());
                prop_assert!(r.check_invariants().is_ok());
            }
            (None, None) => {}
            (got, want) => prop_assert!(false, "search {:?} vs scan {:?}", got.map(|p| p.1), want),
        }
    }

    #[test]
    fn search_using_after_measure(xs in prop::collection::vec(0u32..50, 1..300)) {
        let t: Seq = xs.iter().copied().collect();
        // first point where the prefix is at least as long as the suffix
        let n = xs.len() as u64;
        let scan = (0..xs.len()).find(|&i| (i as u64 + 1) >= n - (i as u64 + 1)).unwrap();
        let (l, x, r) = t.search(|b, a| b.len >= a.len).found().unwrap();
        prop_assert_eq!(l.len(), scan);
        prop_assert_eq!(x, xs[scan]);
        prop_assert_eq!(r.len(), xs.len() - scan - 1);
    }

    #[test]
    fn disjunctive_search_matches_general(
        xs in prop::collection::btree_set(0u32..5000, 0..300),
        pick in any::<prop::sample::Index>(),
        shuffle_seed in any::<u64>(),
    ) {
        let mut xs: Vec<u32> = xs.into_iter().collect();
        // deterministic shuffle so set order differs from sequence order
        let mut s = shuffle_seed | 1;
        for i in (1..xs.len()).rev() {
            s ^= s << 13; s ^= s >> 7; s ^= s << 17;
            xs.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let t: FingerTree<Bag, u32> = xs.iter().copied().collect();
        let target = if xs.is_empty() { 0 } else { xs[pick.index(xs.len())] };
        let fast = t.search_by(&Contains(target)).found();
        let slow = t.search(|b, _| b.0.contains(&target)).found();
        prop_assert_eq!(t.find_by(&Contains(target)).copied(), xs.iter().copied().find(|&x| x == target));
        match (fast, slow) {
            (Some((l1, x1, r1)), Some((l2, x2, r2))) => {
                prop_assert_eq!(x1, target);
                prop_assert_eq!(x1, x2);
                prop_assert_eq!(l1.to_vec(), l2.to_vec());
                prop_assert_eq!(r1.to_vec(), r2.to_vec());
                let pos = xs.iter().position(|&x| x == target).unwrap();
                prop_assert_eq!(l1.to_vec(), xs[..pos].to_vec());
                prop_assert!(l1.check_invariants().is_ok());
                prop_assert!(r1.check_invariants().is_ok());
            }
            (None, None) => prop_assert!(xs.is_empty()),
            _ => prop_assert!(false, "routes disagree"),
        }
    }
}
