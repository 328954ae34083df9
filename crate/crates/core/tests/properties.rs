mod common;

use std::collections::BTreeMap;

use common::{fig1a, fig1b, world};
use geoplan_core::geodesy::{classify_antipodal, inverse};
use geoplan_core::toolbox::{KeyedQueue, QueueError};
use geoplan_core::{CityId, Cost, DliteSession, Ellipsoid, GraphDatabase, LpaSession, PriorityKey};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const WGS84: Ellipsoid = Ellipsoid::WGS84;

fn distance(db: &GraphDatabase, u: CityId, v: CityId) -> f64 {
    if u == v {
        return 0.0;
    }
    inverse(db.record(u).coord(), db.record(v).coord(), &WGS84).unwrap().s12
}

#[test]
fn world_has_no_antipodal_pairs() {
    let db = world();
    assert_eq!(db.len(), 124);
    for u in db.ids() {
        for v in db.ids().filter(|&v| v > u) {
            assert!(
                !classify_antipodal(db.record(u).coord(), db.record(v).coord()),
                "{} / {}",
                db.record(u).name(),
                db.record(v).name()
            );
        }
    }
}

#[test]
fn heuristic_is_consistent_over_every_edge() {
    let db = world();
    let n = db.len();
    let mut d = vec![0.0; n * n];
    for u in db.ids() {
        for v in db.ids().filter(|&v| v > u) {
            let s = distance(&db, u, v);
            d[u.index() * n + v.index()] = s;
            d[v.index() * n + u.index()] = s;
        }
    }
    let at = |u: CityId, v: CityId| d[u.index() * n + v.index()];
    for (u, v) in db.edges() {
        for a in db.ids() {
            assert!(at(u, a) <= at(u, v) + at(v, a) + 1e-6);
            assert!(at(v, a) <= at(u, v) + at(u, a) + 1e-6);
        }
    }
    // plus random triples
    let ids: Vec<CityId> = db.ids().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..10_000 {
        let [x, y, z] = [(); 3].map(|_| ids[rng.gen_range(0..ids.len())]);
        assert!(at(x, z) <= at(x, y) + at(y, z) + 1e-6);
    }
}

#[derive(Debug, Clone)]
enum QueueOp {
    Insert(u8, u16, u16),
    Update(u8, u16, u16),
    Remove(u8),
    Pop,
}

fn queue_op() -> impl Strategy<Value = QueueOp> {
    prop_oneof![
        (0..10u8, 0..20u16, 0..20u16).prop_map(|(o, p, s)| QueueOp::Insert(o, p, s)),
        (0..10u8, 0..20u16, 0..20u16).prop_map(|(o, p, s)| QueueOp::Update(o, p, s)),
        (0..10u8).prop_map(QueueOp::Remove),
        Just(QueueOp::Pop),
    ]
}

proptest! {
    #[test]
    fn queue_pops_in_total_order(ops in prop::collection::vec(queue_op(), 0..80)) {
        let db = fig1a();
        let owners: Vec<CityId> = db.ids().collect();
        let key = |o: u8, p: u16, s: u16| {
            PriorityKey::new(Cost::new(p as f64), Cost::new(s as f64), owners[o as usize])
        };
        let mut queue = KeyedQueue::new();
        let mut model: BTreeMap<CityId, PriorityKey> = BTreeMap::new();
        for op in ops {
            match op {
                QueueOp::Insert(o, p, s) => {
                    let k = key(o, p, s);
                    let result = queue.insert(k);
                    if model.contains_key(&k.owner) {
                        prop_assert_eq!(result, Err(QueueError::DuplicateOwner(k.owner)));
                    } else {
                        prop_assert!(result.is_ok());
                        model.insert(k.owner, k);
                    }
                }
                QueueOp::Update(o, p, s) => {
                    let k = key(o, p, s);
                    queue.update(k);
                    model.insert(k.owner, k);
                }
                QueueOp::Remove(o) => {
                    let owner = owners[o as usize];
                    prop_assert_eq!(queue.remove(owner), model.remove(&owner));
                }
                QueueOp::Pop => {
                    let expected = model.values().min().copied();
                    match expected {
                        Some(k) => {
                            prop_assert_eq!(queue.pop_min(), Ok(k));
                            model.remove(&k.owner);
                        }
                        None => prop_assert_eq!(queue.pop_min(), Err(QueueError::Empty)),
                    }
                }
            }
            prop_assert_eq!(queue.len(), model.len());
        }
        let mut last = None;
        while let Ok(k) = queue.pop_min() {
            if let Some(prev) = last {
                prop_assert!(prev <= k);
            }
            last = Some(k);
        }
    }
}

#[derive(Debug, Clone)]
enum SessionOp {
    Compute,
    Block(u8),
    Unblock(u8),
    MoveAlongRoute,
}

fn session_op() -> impl Strategy<Value = SessionOp> {
    prop_oneof![
        3 => Just(SessionOp::Compute),
        3 => (0..10u8).prop_map(SessionOp::Block),
        2 => (0..10u8).prop_map(SessionOp::Unblock),
        1 => Just(SessionOp::MoveAlongRoute),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// The queue holds exactly the inconsistent vertices, lookaheads and
    /// backpointers are exact, and routes extract, after every public call.
    #[test]
    fn incremental_invariants_hold_after_every_operation(
        fixture in 0..2usize,
        s in 0..10u8,
        g in 0..10u8,
        ops in prop::collection::vec(session_op(), 0..25),
    ) {
        let db = if fixture == 0 { fig1a() } else { fig1b() };
        let names: Vec<&str> = db.iter().map(|r| r.name()).collect();
        let pick = |i: u8| names[i as usize % names.len()];
        let (start, goal) = (pick(s), pick(g));
        let mut lpa = LpaSession::new(&db, WGS84, start, goal, &[]).unwrap();
        let mut dl = DliteSession::new(&db, WGS84, start, goal, &[]).unwrap();
        lpa.check_invariants().unwrap();
        dl.check_invariants().unwrap();
        let mut dl_route = None;
        let mut moved = false;
        for op in ops {
            match op {
                SessionOp::Compute => {
                    let l = lpa.compute();
                    let d = dl.compute();
                    // same endpoints and blockages until the D* Lite start moves
                    if !moved {
                        match (&l, &d) {
                            (Ok(a), Ok(b)) => {
                                prop_assert!((a.total_cost.meters() - b.total_cost.meters()).abs() <= 1e-6)
                            }
                            (Err(_), Err(_)) => {}
                            _ => prop_assert!(false, "{l:?} vs {d:?}"),
                        }
                    }
                    dl_route = d.ok();
                }
                SessionOp::Block(i) | SessionOp::Unblock(i) => {
                    let flag = matches!(op, SessionOp::Block(_));
                    let v = pick(i);
                    let l = lpa.apply_blockage(&[(v, flag)]);
                    let d = dl.apply_blockage(&[(v, flag)]);
                    let lpa_endpoint = v == start || v == goal;
                    let dl_endpoint = Some(db.id(v).unwrap()) == Some(dl.start()) || v == goal;
                    prop_assert_eq!(l.is_err(), flag && lpa_endpoint);
                    prop_assert_eq!(d.is_err(), flag && dl_endpoint);
                    dl_route = None;
                }
                SessionOp::MoveAlongRoute => {
                    if let Some(next) = dl_route.as_ref().and_then(|r| r.stops.get(1)) {
                        let before = dl.km();
                        dl.move_start(&next.name).unwrap();
                        moved = true;
                        prop_assert!(dl.km() >= before);
                    }
                    dl_route = None;
                }
            }
            lpa.check_invariants().map_err(TestCaseError::fail)?;
            dl.check_invariants().map_err(TestCaseError::fail)?;
        }
    }
}
