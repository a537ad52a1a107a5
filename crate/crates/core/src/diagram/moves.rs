//! Reidemeister and planar-isotopy moves on elementary Morse words.
//!
//! Insertion moves act at a gap (`slice` = index of the step above the gap)
//! and a strand `position`. Every other move acts on the steps starting at
//! `slice`; toggling moves (R0, RIII, interchange) are their own inverses.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Crossing, DiagramError, Event, MorseWord, Orientation, Step};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    /// Slides a crossing across a cap.
    R0Plus,
    /// Slides a crossing across a cup.
    R0Minus,
    /// Inserts a cancelling pair; `over_left` puts the left strand on top.
    RIIInsert { over_left: bool },
    RIIRemove,
    RIII,
    RIPositive { side: Side },
    RINegative { side: Side },
    RIRemove,
    /// Swaps two steps acting on disjoint strands. When a cup sits right
    /// above a cap, position 0 moves it to the left of the cap and any
    /// other position to the right.
    Interchange,
    ZigzagInsert { side: Side },
    ZigzagRemove,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReidemeisterMove {
    pub kind: MoveKind,
    pub slice: usize,
    pub position: usize,
}

impl ReidemeisterMove {
    pub fn new(kind: MoveKind, slice: usize, position: usize) -> Self {
        Self { kind, slice, position }
    }

    pub fn at(kind: MoveKind, slice: usize) -> Self {
        Self::new(kind, slice, 0)
    }

    /// The move undoing `self` on the word obtained by applying it to `before`.
    pub fn inverse(&self, before: &MorseWord) -> Option<ReidemeisterMove> {
        let i = self.slice;
        let steps = before.steps();
        Some(match self.kind {
            MoveKind::R0Plus | MoveKind::R0Minus | MoveKind::RIII => *self,
            MoveKind::Interchange => {
                let after = apply(before, self).ok()?;
                let back = Self::new(MoveKind::Interchange, i, 0);
                if apply(&after, &back).ok()? == *before {
                    back
                } else {
                    Self::new(MoveKind::Interchange, i, 1)
                }
            }
            MoveKind::RIIInsert { .. } => Self::at(MoveKind::RIIRemove, i),
            MoveKind::RIPositive { .. } | MoveKind::RINegative { .. } => Self::at(MoveKind::RIRemove, i),
            MoveKind::ZigzagInsert { .. } => Self::at(MoveKind::ZigzagRemove, i),
            MoveKind::RIIRemove => {
                let Event::Cross(c) = steps.get(i)?.event else { return None };
                Self::new(MoveKind::RIIInsert { over_left: c.over_slash }, i, steps[i].pos)
            }
            MoveKind::RIRemove => {
                let (cup, Event::Cross(c)) = (steps.get(i)?, steps.get(i + 1)?.event) else { return None };
                let (side, p) = if steps[i + 1].pos < cup.pos { (Side::Right, cup.pos - 1) } else { (Side::Left, cup.pos) };
                let kind = if c.sign() > 0 { MoveKind::RIPositive { side } } else { MoveKind::RINegative { side } };
                Self::new(kind, i, p)
            }
            MoveKind::ZigzagRemove => {
                let (cup, cap) = (steps.get(i)?, steps.get(i + 1)?);
                if cap.pos < cup.pos {
                    Self::new(MoveKind::ZigzagInsert { side: Side::Right }, i, cap.pos)
                } else {
                    Self::new(MoveKind::ZigzagInsert { side: Side::Left }, i, cup.pos)
                }
            }
        })
    }
}

fn mismatch(mv: &ReidemeisterMove) -> DiagramError {
    DiagramError::PatternMismatch { kind: format!("{:?}", mv.kind), slice: mv.slice, position: mv.position }
}

fn cross_at(steps: &[Step], i: usize) -> Option<(Crossing, usize)> {
    match steps.get(i)?.event {
        Event::Cross(c) => Some((c, steps[i].pos)),
        _ => None,
    }
}

fn splice(steps: &[Step], at: usize, remove: usize, insert: &[Step]) -> Vec<Step> {
    let mut out = steps[..at].to_vec();
    out.extend_from_slice(insert);
    out.extend_from_slice(&steps[at + remove..]);
    out
}

fn riii_acyclic(ab: bool, ac: bool, bc: bool) -> bool {
    !((ab && bc && !ac) || (!ab && !bc && ac))
}

/// Replacement steps for the move at `mv.slice`, and how many steps they replace.
fn rewrite(w: &MorseWord, mv: &ReidemeisterMove) -> Option<(usize, Vec<Step>)> {
    let steps = w.steps();
    let sigs = w.signatures().ok()?;
    let i = mv.slice;
    let p = mv.position;
    let new = Crossing::new;
    match mv.kind {
        MoveKind::R0Plus => {
            let (c, q) = cross_at(steps, i)?;
            let cap = steps.get(i + 1)?;
            if !cap.event.is_cap() {
                return None;
            }
            if cap.pos == q + 1 {
                let (s, y) = (c.back, sigs[i][q + 2]);
                Some((2, vec![Step::new(Event::Cross(new(s, y, !c.over_slash)), q + 1), Step::new(cap.event, q)]))
            } else if cap.pos + 1 == q {
                let (x, s) = (sigs[i][cap.pos], c.slash);
                Some((2, vec![Step::new(Event::Cross(new(x, s, !c.over_slash)), cap.pos), Step::new(cap.event, cap.pos + 1)]))
            } else {
                None
            }
        }
        MoveKind::R0Minus => {
            let cup = steps.get(i)?;
            if !cup.event.is_cup() {
                return None;
            }
            let (c, r) = cross_at(steps, i + 1)?;
            let legs = cup.event.outputs();
            if r + 1 == cup.pos {
                let (s, y) = (c.slash, legs[1]);
                Some((2, vec![Step::new(cup.event, r), Step::new(Event::Cross(new(y, s, !c.over_slash)), r + 1)]))
            } else if r == cup.pos + 1 {
                let (x, s) = (legs[0], c.back);
                Some((2, vec![Step::new(cup.event, r), Step::new(Event::Cross(new(s, x, !c.over_slash)), cup.pos)]))
            } else {
                None
            }
        }
        MoveKind::RIIInsert { over_left } => {
            let sig = sigs.get(i)?;
            if p + 1 >= sig.len() {
                return None;
            }
            let c = new(sig[p], sig[p + 1], over_left);
            Some((0, vec![Step::new(Event::Cross(c), p), Step::new(Event::Cross(c.cancelling()), p)]))
        }
        MoveKind::RIIRemove => {
            let (c1, p1) = cross_at(steps, i)?;
            let (c2, p2) = cross_at(steps, i + 1)?;
            (p1 == p2 && c2 == c1.cancelling()).then(|| (2, vec![]))
        }
        MoveKind::RIII => {
            let (c1, p1) = cross_at(steps, i)?;
            let (c2, p2) = cross_at(steps, i + 1)?;
            let (c3, p3) = cross_at(steps, i + 2)?;
            if p1 == p3 && p2 == p1 + 1 {
                let q = p1;
                let (a, b, c) = (sigs[i][q], sigs[i][q + 1], sigs[i][q + 2]);
                let (ab, ac, bc) = (c1.over_slash, c2.over_slash, c3.over_slash);
                riii_acyclic(ab, ac, bc).then(|| {
                    (3, vec![
                        Step::new(Event::Cross(new(b, c, bc)), q + 1),
                        Step::new(Event::Cross(new(a, c, ac)), q),
                        Step::new(Event::Cross(new(a, b, ab)), q + 1),
                    ])
                })
            } else if p1 == p3 && p1 == p2 + 1 {
                let q = p2;
                let (a, b, c) = (sigs[i][q], sigs[i][q + 1], sigs[i][q + 2]);
                let (bc, ac, ab) = (c1.over_slash, c2.over_slash, c3.over_slash);
                riii_acyclic(ab, ac, bc).then(|| {
                    (3, vec![
                        Step::new(Event::Cross(new(a, b, ab)), q),
                        Step::new(Event::Cross(new(a, c, ac)), q + 1),
                        Step::new(Event::Cross(new(b, c, bc)), q),
                    ])
                })
            } else {
                None
            }
        }
        MoveKind::RIPositive { side } | MoveKind::RINegative { side } => {
            let positive = matches!(mv.kind, MoveKind::RIPositive { .. });
            let o = *sigs.get(i)?.get(p)?;
            let kink = Event::Cross(new(o, o, positive));
            Some((0, match side {
                Side::Right => vec![
                    Step::new(Event::cup_with_legs(o), p + 1),
                    Step::new(kink, p),
                    Step::new(Event::cap_with_legs(o), p + 1),
                ],
                Side::Left => vec![
                    Step::new(Event::cup_with_legs(o.flip()), p),
                    Step::new(kink, p + 1),
                    Step::new(Event::cap_with_legs(o.flip()), p),
                ],
            }))
        }
        MoveKind::RIRemove => {
            let cup = steps.get(i)?;
            let (_, r) = cross_at(steps, i + 1)?;
            let cap = steps.get(i + 2)?;
            if !cup.event.is_cup() || !cap.event.is_cap() || cap.pos != cup.pos {
                return None;
            }
            (r + 1 == cup.pos || r == cup.pos + 1).then(|| (3, vec![]))
        }
        MoveKind::Interchange => {
            let (s1, s2) = (*steps.get(i)?, *steps.get(i + 1)?);
            let (a1, b1) = (s1.event.in_arity(), s1.event.out_arity());
            let (a2, b2) = (s2.event.in_arity(), s2.event.out_arity());
            let left = s2.pos + a2 <= s1.pos;
            let right = s2.pos >= s1.pos + b1;
            // A cup right above a cap at the same spot may move to either side.
            if left && (!right || p == 0) {
                Some((2, vec![Step::new(s2.event, s2.pos), Step::new(s1.event, s1.pos + b2 - a2)]))
            } else if right {
                Some((2, vec![Step::new(s2.event, s2.pos + a1 - b1), Step::new(s1.event, s1.pos)]))
            } else {
                None
            }
        }
        MoveKind::ZigzagInsert { side } => {
            let o = *sigs.get(i)?.get(p)?;
            Some((0, match side {
                Side::Right => vec![Step::new(Event::cup_with_legs(o.flip()), p + 1), Step::new(Event::cap_with_legs(o), p)],
                Side::Left => vec![Step::new(Event::cup_with_legs(o), p), Step::new(Event::cap_with_legs(o.flip()), p + 1)],
            }))
        }
        MoveKind::ZigzagRemove => {
            let (cup, cap) = (steps.get(i)?, steps.get(i + 1)?);
            if !cup.event.is_cup() || !cap.event.is_cap() {
                return None;
            }
            (cap.pos + 1 == cup.pos || cap.pos == cup.pos + 1).then(|| (2, vec![]))
        }
    }
}

pub(super) fn apply(w: &MorseWord, mv: &ReidemeisterMove) -> Result<MorseWord, DiagramError> {
    let (remove, insert) = rewrite(w, mv).ok_or_else(|| mismatch(mv))?;
    Ok(MorseWord::from_steps_unchecked(splice(w.steps(), mv.slice, remove, &insert)))
}

/// Every removal and toggling move that applies to `w`.
fn located_moves(w: &MorseWord) -> Vec<ReidemeisterMove> {
    let kinds = [
        MoveKind::R0Plus,
        MoveKind::R0Minus,
        MoveKind::RIIRemove,
        MoveKind::RIII,
        MoveKind::RIRemove,
        MoveKind::Interchange,
        MoveKind::ZigzagRemove,
    ];
    let mut out = Vec::new();
    for i in 0..w.len() {
        for kind in kinds {
            let mv = ReidemeisterMove::at(kind, i);
            if rewrite(w, &mv).is_some() {
                out.push(mv);
            }
        }
    }
    out
}

fn random_insertion(w: &MorseWord, rng: &mut ChaCha8Rng) -> Option<ReidemeisterMove> {
    let sigs = w.signatures().ok()?;
    let gap = rng.gen_range(0..sigs.len());
    let width = sigs[gap].len();
    let side = if rng.gen_bool(0.5) { Side::Left } else { Side::Right };
    let kind = match rng.gen_range(0..3) {
        0 => MoveKind::RIIInsert { over_left: rng.gen_bool(0.5) },
        1 if rng.gen_bool(0.5) => MoveKind::RIPositive { side },
        1 => MoveKind::RINegative { side },
        _ => MoveKind::ZigzagInsert { side },
    };
    let limit = if matches!(kind, MoveKind::RIIInsert { .. }) { width.checked_sub(1)? } else { width };
    if limit == 0 {
        return None;
    }
    Some(ReidemeisterMove::new(kind, gap, rng.gen_range(0..limit)))
}

/// Applies `length` random moves drawn from a seeded generator.
pub fn random_move_sequence(start: &MorseWord, seed: u64, length: usize) -> MorseWord {
    random_move_sequence_logged(start, seed, length).0
}

/// Like [`random_move_sequence`], also returning the moves applied.
pub fn random_move_sequence_logged(start: &MorseWord, seed: u64, length: usize) -> (MorseWord, Vec<ReidemeisterMove>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = start.clone();
    let mut log = Vec::with_capacity(length);
    while log.len() < length {
        let located = located_moves(&w);
        let mv = if !located.is_empty() && rng.gen_bool(0.6) {
            Some(located[rng.gen_range(0..located.len())])
        } else {
            random_insertion(&w, &mut rng)
        };
        if let Some(mv) = mv {
            if let Ok(next) = apply(&w, &mv) {
                w = next;
                log.push(mv);
            }
        }
    }
    (w, log)
}

/// Over-order and orientations of the three strands of the RIII pattern at
/// step `i`: heights (0 = top) of the strands entering at the left, middle
/// and right, and their orientations as `±1`.
pub fn riii_label(w: &MorseWord, i: usize) -> Option<([u8; 3], [i8; 3])> {
    rewrite(w, &ReidemeisterMove::at(MoveKind::RIII, i))?;
    let steps = w.steps();
    let sigs = w.signatures().ok()?;
    let (c1, p1) = cross_at(steps, i)?;
    let (c2, p2) = cross_at(steps, i + 1)?;
    let (c3, _) = cross_at(steps, i + 2)?;
    let (ab, ac, bc) = if p2 == p1 + 1 {
        (c1.over_slash, c2.over_slash, c3.over_slash)
    } else {
        (c3.over_slash, c2.over_slash, c1.over_slash)
    };
    let q = p1.min(p2);
    let above = [u8::from(!ab) + u8::from(!ac), u8::from(ab) + u8::from(!bc), u8::from(ac) + u8::from(bc)];
    let orient = |o: Orientation| if o == Orientation::Up { 1 } else { -1 };
    Some((above, [orient(sigs[i][q]), orient(sigs[i][q + 1]), orient(sigs[i][q + 2])]))
}
