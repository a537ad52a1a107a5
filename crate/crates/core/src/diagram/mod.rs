//! Long knot diagrams as Morse words.
//!
//! A word is read bottom to top. Each slice is a row of events whose input
//! orientations concatenate to the signature below it. Internally a word is
//! kept in elementary form: one non-strand event per slice, recorded with the
//! position of its leftmost input. Strand-only slices carry no information and
//! are never stored.

mod moves;
mod text;

pub use moves::{random_move_sequence, random_move_sequence_logged, riii_label, MoveKind, ReidemeisterMove, Side};
pub use text::{parse_tangle, TextError};

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    Up,
    Down,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Up => Orientation::Down,
            Orientation::Down => Orientation::Up,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Orientation::Up => 'u',
            Orientation::Down => 'd',
        }
    }
}

use Orientation::{Down, Up};

pub fn signature_string(sig: &[Orientation]) -> String {
    if sig.is_empty() {
        return "()".into();
    }
    sig.iter().map(|o| o.letter()).collect()
}

/// A crossing seen as two strands: the slash runs from bottom-left to
/// top-right, the backslash from bottom-right to top-left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub slash: Orientation,
    pub back: Orientation,
    pub over_slash: bool,
}

impl Crossing {
    pub fn new(slash: Orientation, back: Orientation, over_slash: bool) -> Self {
        Self { slash, back, over_slash }
    }

    /// Builds the crossing with the given sign and over/under orientations.
    pub fn from_sign(positive: bool, over: Orientation, under: Orientation) -> Self {
        let over_slash = positive == (over == under);
        if over_slash {
            Self::new(over, under, true)
        } else {
            Self::new(under, over, false)
        }
    }

    pub fn sign(&self) -> i32 {
        if self.over_slash == (self.slash == self.back) {
            1
        } else {
            -1
        }
    }

    pub fn over(&self) -> Orientation {
        if self.over_slash {
            self.slash
        } else {
            self.back
        }
    }

    pub fn under(&self) -> Orientation {
        if self.over_slash {
            self.back
        } else {
            self.slash
        }
    }

    /// The crossing that cancels this one when stacked directly above it.
    pub fn cancelling(&self) -> Self {
        Self::new(self.back, self.slash, !self.over_slash)
    }

    pub fn token(&self) -> String {
        format!(
            "x{}{}{}",
            if self.sign() > 0 { '+' } else { '-' },
            self.over().letter(),
            self.under().letter()
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Event {
    Strand(Orientation),
    /// Cap whose left leg points up.
    CapLR,
    /// Cap whose left leg points down; the evaluation pairing.
    CapRL,
    /// Cup whose left leg points down.
    CupLR,
    /// Cup whose left leg points up; the coevaluation.
    CupRL,
    Cross(Crossing),
}

impl Event {
    pub fn inputs(&self) -> Vec<Orientation> {
        match self {
            Event::Strand(o) => vec![*o],
            Event::CapLR => vec![Up, Down],
            Event::CapRL => vec![Down, Up],
            Event::CupLR | Event::CupRL => vec![],
            Event::Cross(c) => vec![c.slash, c.back],
        }
    }

    pub fn outputs(&self) -> Vec<Orientation> {
        match self {
            Event::Strand(o) => vec![*o],
            Event::CapLR | Event::CapRL => vec![],
            Event::CupLR => vec![Down, Up],
            Event::CupRL => vec![Up, Down],
            Event::Cross(c) => vec![c.back, c.slash],
        }
    }

    pub fn in_arity(&self) -> usize {
        match self {
            Event::Strand(_) => 1,
            Event::CapLR | Event::CapRL | Event::Cross(_) => 2,
            Event::CupLR | Event::CupRL => 0,
        }
    }

    pub fn out_arity(&self) -> usize {
        match self {
            Event::Strand(_) => 1,
            Event::CupLR | Event::CupRL | Event::Cross(_) => 2,
            Event::CapLR | Event::CapRL => 0,
        }
    }

    pub fn is_strand(&self) -> bool {
        matches!(self, Event::Strand(_))
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Event::CapLR | Event::CapRL)
    }

    pub fn is_cup(&self) -> bool {
        matches!(self, Event::CupLR | Event::CupRL)
    }

    pub fn cap_with_legs(left: Orientation) -> Self {
        match left {
            Up => Event::CapLR,
            Down => Event::CapRL,
        }
    }

    pub fn cup_with_legs(left: Orientation) -> Self {
        match left {
            Up => Event::CupRL,
            Down => Event::CupLR,
        }
    }

    pub fn token(&self) -> String {
        match self {
            Event::Strand(o) => o.letter().to_string(),
            Event::CapLR => "capLR".into(),
            Event::CapRL => "capRL".into(),
            Event::CupLR => "cupLR".into(),
            Event::CupRL => "cupRL".into(),
            Event::Cross(c) => c.token(),
        }
    }

    pub fn from_token(tok: &str) -> Option<Self> {
        Some(match tok {
            "u" | "|" => Event::Strand(Up),
            "d" => Event::Strand(Down),
            "capLR" => Event::CapLR,
            "capRL" => Event::CapRL,
            "cupLR" => Event::CupLR,
            "cupRL" => Event::CupRL,
            _ => {
                let b = tok.as_bytes();
                if b.len() != 4 || b[0] != b'x' {
                    return None;
                }
                let positive = match b[1] {
                    b'+' => true,
                    b'-' => false,
                    _ => return None,
                };
                let orient = |c: u8| match c {
                    b'u' => Some(Up),
                    b'd' => Some(Down),
                    _ => None,
                };
                Event::Cross(Crossing::from_sign(positive, orient(b[2])?, orient(b[3])?))
            }
        })
    }
}

/// A non-strand event placed at a position of the signature below it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Step {
    pub event: Event,
    pub pos: usize,
}

impl Step {
    pub fn new(event: Event, pos: usize) -> Self {
        Self { event, pos }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error(transparent)]
    Text(#[from] TextError),
    #[error("slice {slice}: expected input signature {expected}, found {found}")]
    ArityMismatch { slice: usize, expected: String, found: String },
    #[error("a long knot must start and end with a single upward strand; got bottom {bottom}, top {top}")]
    Boundary { bottom: String, top: String },
    #[error("diagram has closed components besides the long strand")]
    NotConnected,
    #[error("braid generator {generator} out of range for {strands} strands")]
    GeneratorOutOfRange { generator: i32, strands: usize },
    #[error("braid closure has {components} components, not a knot")]
    NotAKnot { components: usize },
    #[error("writhe {0} of the normalized diagram is odd")]
    OddWrithe(i32),
    #[error("move {kind} does not apply at slice {slice}, position {position}")]
    PatternMismatch { kind: String, slice: usize, position: usize },
}

/// A sequence of elementary steps over a bottom signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tangle {
    bottom: Vec<Orientation>,
    steps: Vec<Step>,
}

impl Tangle {
    pub fn new(bottom: Vec<Orientation>, steps: Vec<Step>) -> Result<Self, DiagramError> {
        let t = Self { bottom, steps };
        t.signatures()?;
        Ok(t)
    }

    pub(crate) fn new_unchecked(bottom: Vec<Orientation>, steps: Vec<Step>) -> Self {
        let t = Self { bottom, steps };
        debug_assert!(t.signatures().is_ok(), "invalid tangle {t:?}");
        t
    }

    pub fn bottom(&self) -> &[Orientation] {
        &self.bottom
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Signatures between slices: entry `i` sits just below step `i`.
    pub fn signatures(&self) -> Result<Vec<Vec<Orientation>>, DiagramError> {
        let mut sigs = Vec::with_capacity(self.steps.len() + 1);
        let mut sig = self.bottom.clone();
        for (i, step) in self.steps.iter().enumerate() {
            let ins = step.event.inputs();
            let end = step.pos + ins.len();
            if end > sig.len() || sig[step.pos..end] != ins[..] || step.event.is_strand() {
                return Err(DiagramError::ArityMismatch {
                    slice: i + 1,
                    expected: signature_string(&ins),
                    found: signature_string(sig.get(step.pos..end.min(sig.len())).unwrap_or(&[])),
                });
            }
            let next = apply_step(&sig, step);
            sigs.push(std::mem::replace(&mut sig, next));
        }
        sigs.push(sig);
        Ok(sigs)
    }

    pub fn top(&self) -> Vec<Orientation> {
        self.signatures().expect("validated").pop().unwrap()
    }

    /// Full slices, strands included, bottom to top.
    pub fn slices(&self) -> Vec<Vec<Event>> {
        let sigs = self.signatures().expect("validated");
        self.steps
            .iter()
            .zip(&sigs)
            .map(|(step, sig)| {
                let mut row: Vec<Event> = sig[..step.pos].iter().map(|o| Event::Strand(*o)).collect();
                row.push(step.event);
                row.extend(sig[step.pos + step.event.in_arity()..].iter().map(|o| Event::Strand(*o)));
                row
            })
            .collect()
    }

    pub fn crossings(&self) -> impl Iterator<Item = (usize, Crossing)> + '_ {
        self.steps.iter().enumerate().filter_map(|(i, s)| match s.event {
            Event::Cross(c) => Some((i, c)),
            _ => None,
        })
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings().count()
    }

    pub fn writhe(&self) -> i32 {
        self.crossings().map(|(_, c)| c.sign()).sum()
    }

    /// Maximal signature width.
    pub fn width(&self) -> usize {
        self.signatures().expect("validated").iter().map(Vec::len).max().unwrap_or(0)
    }

    /// True when every cap is a `capRL` and every cup a `cupRL`.
    pub fn is_normal(&self) -> bool {
        self.steps.iter().all(|s| !matches!(s.event, Event::CapLR | Event::CupLR))
    }

    /// Stacks `above` on top of `self`.
    pub fn then(&self, above: &Tangle) -> Result<Tangle, DiagramError> {
        let top = self.top();
        if top != above.bottom {
            return Err(DiagramError::ArityMismatch {
                slice: self.len() + 1,
                expected: signature_string(&above.bottom),
                found: signature_string(&top),
            });
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&above.steps);
        Ok(Tangle::new_unchecked(self.bottom.clone(), steps))
    }

    /// Rewrites every `capLR` and `cupLR` as a crossing followed by the
    /// normal cap or cup. Each rewrite adds one crossing: negative for caps,
    /// positive for cups.
    pub fn normalize(&self) -> Tangle {
        let mut steps = Vec::with_capacity(self.steps.len());
        for s in &self.steps {
            match s.event {
                Event::CapLR => {
                    steps.push(Step::new(Event::Cross(Crossing::new(Up, Down, true)), s.pos));
                    steps.push(Step::new(Event::CapRL, s.pos));
                }
                Event::CupLR => {
                    steps.push(Step::new(Event::CupRL, s.pos));
                    steps.push(Step::new(Event::Cross(Crossing::new(Up, Down, false)), s.pos));
                }
                _ => steps.push(*s),
            }
        }
        Tangle::new_unchecked(self.bottom.clone(), steps)
    }

    /// Walks the strand from the bottom-left endpoint, then counts the
    /// closed components left over.
    pub fn trace(&self) -> Result<Trace, DiagramError> {
        let sigs = self.signatures()?;
        // Bit 0: slash leg (or the cap/cup), bit 1: backslash leg.
        let mut visits = vec![0u8; self.steps.len()];
        let mut passages = Vec::new();
        let mut endpoint = None;
        if !self.bottom.is_empty() {
            let mut cur = Cursor { level: 0, pos: 0, up: self.bottom[0] == Up };
            while let Some(next) = self.advance(cur, &mut visits, &mut passages) {
                cur = next;
            }
            endpoint = Some(cur);
        }
        let mut closed = 0;
        let mut scratch = Vec::new();
        for i in 0..self.steps.len() {
            let Step { event, pos: p } = self.steps[i];
            let full = if matches!(event, Event::Cross(_)) { 3 } else { 1 };
            while visits[i] != full {
                let start = match event {
                    Event::Cross(_) if visits[i] & 1 == 0 => Cursor { level: i, pos: p, up: sigs[i][p] == Up },
                    Event::Cross(_) => Cursor { level: i, pos: p + 1, up: sigs[i][p + 1] == Up },
                    Event::CupLR | Event::CupRL => Cursor { level: i + 1, pos: p, up: sigs[i + 1][p] == Up },
                    _ => Cursor { level: i, pos: p, up: sigs[i][p] == Up },
                };
                let mut cur = start;
                loop {
                    match self.advance(cur, &mut visits, &mut scratch) {
                        Some(next) if next != start => cur = next,
                        _ => break,
                    }
                }
                closed += 1;
            }
        }
        Ok(Trace { passages, endpoint, closed_components: closed })
    }

    /// One move of the walk; `None` once the strand leaves the tangle.
    fn advance(&self, cur: Cursor, visits: &mut [u8], passages: &mut Vec<Passage>) -> Option<Cursor> {
        if cur.up {
            if cur.level == self.steps.len() {
                return None;
            }
            let i = cur.level;
            let Step { event, pos: p } = self.steps[i];
            let (a, b) = (event.in_arity(), event.out_arity());
            if cur.pos < p {
                return Some(Cursor { level: i + 1, ..cur });
            }
            if cur.pos >= p + a {
                return Some(Cursor { level: i + 1, pos: cur.pos + b - a, up: true });
            }
            match event {
                Event::Cross(c) => {
                    let on_slash = cur.pos == p;
                    visits[i] |= if on_slash { 1 } else { 2 };
                    passages.push(Passage { step: i, over: on_slash == c.over_slash });
                    Some(Cursor { level: i + 1, pos: if on_slash { p + 1 } else { p }, up: true })
                }
                _ => {
                    visits[i] |= 1;
                    let other = if cur.pos == p { p + 1 } else { p };
                    Some(Cursor { level: i, pos: other, up: false })
                }
            }
        } else {
            if cur.level == 0 {
                return None;
            }
            let i = cur.level - 1;
            let Step { event, pos: p } = self.steps[i];
            let (a, b) = (event.in_arity(), event.out_arity());
            if cur.pos < p {
                return Some(Cursor { level: i, ..cur });
            }
            if cur.pos >= p + b {
                return Some(Cursor { level: i, pos: cur.pos + a - b, up: false });
            }
            match event {
                Event::Cross(c) => {
                    let on_slash = cur.pos == p + 1;
                    visits[i] |= if on_slash { 1 } else { 2 };
                    passages.push(Passage { step: i, over: on_slash == c.over_slash });
                    Some(Cursor { level: i, pos: if on_slash { p } else { p + 1 }, up: false })
                }
                _ => {
                    visits[i] |= 1;
                    let other = if cur.pos == p { p + 1 } else { p };
                    Some(Cursor { level: i + 1, pos: other, up: true })
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Cursor {
    level: usize,
    pos: usize,
    up: bool,
}

/// A pass of the walked strand through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Passage {
    pub step: usize,
    pub over: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub passages: Vec<Passage>,
    endpoint: Option<Cursor>,
    pub closed_components: usize,
}

impl Trace {
    /// Whether the walk from the bottom-left endpoint left through the top
    /// at position 0.
    pub fn exits_top_left(&self, height: usize) -> bool {
        matches!(self.endpoint, Some(Cursor { level, pos: 0, up: true }) if level == height)
    }
}

pub(crate) fn apply_step(sig: &[Orientation], step: &Step) -> Vec<Orientation> {
    let mut out = sig[..step.pos].to_vec();
    out.extend(step.event.outputs());
    out.extend_from_slice(&sig[step.pos + step.event.in_arity()..]);
    out
}

/// A long knot: a connected tangle from one upward strand to one upward strand.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MorseWord(Tangle);

impl std::ops::Deref for MorseWord {
    type Target = Tangle;
    fn deref(&self) -> &Tangle {
        &self.0
    }
}

impl MorseWord {
    pub fn trivial() -> Self {
        MorseWord(Tangle { bottom: vec![Up], steps: vec![] })
    }

    pub fn from_tangle(t: Tangle) -> Result<Self, DiagramError> {
        let top = t.top();
        if t.bottom != [Up] || top != [Up] {
            return Err(DiagramError::Boundary {
                bottom: signature_string(&t.bottom),
                top: signature_string(&top),
            });
        }
        let tr = t.trace()?;
        if tr.closed_components > 0 || !tr.exits_top_left(t.len()) {
            return Err(DiagramError::NotConnected);
        }
        Ok(MorseWord(t))
    }

    pub fn from_steps(steps: Vec<Step>) -> Result<Self, DiagramError> {
        Self::from_tangle(Tangle::new(vec![Up], steps)?)
    }

    pub(crate) fn from_steps_unchecked(steps: Vec<Step>) -> Self {
        let w = MorseWord(Tangle::new_unchecked(vec![Up], steps));
        debug_assert!(Self::from_tangle(w.0.clone()).is_ok(), "not a long knot: {w}");
        w
    }

    pub fn tangle(&self) -> &Tangle {
        &self.0
    }

    pub fn into_tangle(self) -> Tangle {
        self.0
    }

    /// Parses the line-per-slice text format.
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        Self::from_tangle(parse_tangle(text)?)
    }

    /// Serializes to the text format; parsing the output gives back `self`.
    pub fn to_text(&self) -> String {
        text::render(&self.0)
    }

    /// Closure of a braid word on `strands` strands. Generator `i` stands
    /// for `σ_i` and `-i` for its inverse. Strand `j > 1` is closed off to
    /// the right by a cup below the braid and a cap above it.
    pub fn from_braid(word: &[i32], strands: usize) -> Result<Self, DiagramError> {
        if strands == 0 {
            return Err(DiagramError::NotAKnot { components: 0 });
        }
        for &g in word {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(DiagramError::GeneratorOutOfRange { generator: g, strands });
            }
        }
        let components = braid_components(word, strands);
        if components != 1 {
            return Err(DiagramError::NotAKnot { components });
        }
        let mut steps = Vec::new();
        for j in 2..=strands {
            steps.push(Step::new(Event::CupRL, j - 1));
        }
        for &g in word {
            steps.push(Step::new(Event::Cross(Crossing::new(Up, Up, g > 0)), g.unsigned_abs() as usize - 1));
        }
        for j in (2..=strands).rev() {
            steps.push(Step::new(Event::CapLR, j - 1));
        }
        Self::from_tangle(Tangle::new(vec![Up], steps)?)
    }

    /// Places `below` underneath `self`.
    pub fn compose(&self, below: &MorseWord) -> MorseWord {
        let mut steps = below.steps.clone();
        steps.extend_from_slice(&self.steps);
        MorseWord::from_steps_unchecked(steps)
    }

    pub fn normalize(&self) -> MorseWord {
        MorseWord(self.0.normalize())
    }

    /// The kink word `ξ^n`: `2n` crossings, writhe `2n`.
    pub fn xi(n: i32) -> MorseWord {
        let over_slash = n < 0;
        let mut steps = Vec::new();
        for _ in 0..n.unsigned_abs() {
            steps.push(Step::new(Event::CupRL, 1));
            steps.push(Step::new(Event::Cross(Crossing::new(Up, Down, over_slash)), 1));
            steps.push(Step::new(Event::Cross(Crossing::new(Up, Down, over_slash)), 0));
            steps.push(Step::new(Event::CapRL, 0));
        }
        MorseWord::from_steps_unchecked(steps)
    }

    /// Normalizes and cancels the writhe with `ξ^(-w/2)` placed underneath.
    pub fn corrected(&self) -> Result<MorseWord, DiagramError> {
        let nd = self.normalize();
        let w = nd.writhe();
        if w % 2 != 0 {
            return Err(DiagramError::OddWrithe(w));
        }
        Ok(nd.compose(&MorseWord::xi(-w / 2)))
    }

    pub fn apply_move(&self, mv: &ReidemeisterMove) -> Result<MorseWord, DiagramError> {
        moves::apply(self, mv)
    }
}

impl fmt::Display for MorseWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Number of cycles of the permutation closing the braid.
pub fn braid_components(word: &[i32], strands: usize) -> usize {
    let mut perm: Vec<usize> = (0..strands).collect();
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        perm.swap(i, i + 1);
    }
    let mut seen = vec![false; strands];
    let mut cycles = 0;
    for s in 0..strands {
        if !seen[s] {
            cycles += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = perm[x];
            }
        }
    }
    cycles
}

#[derive(Serialize, Deserialize)]
struct WordJson {
    slices: Vec<Vec<String>>,
}

impl Serialize for MorseWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WordJson {
            slices: self.slices().iter().map(|row| row.iter().map(Event::token).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MorseWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = WordJson::deserialize(d)?;
        let text: Vec<String> = j.slices.iter().map(|row| row.join(" ")).collect();
        let text = if text.is_empty() { "u".to_string() } else { text.join("\n") };
        MorseWord::parse(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn crossing_tokens_and_signs() {
        let all = [
            Crossing::new(Up, Up, true),
            Crossing::new(Up, Up, false),
            Crossing::new(Down, Up, false),
            Crossing::new(Down, Up, true),
            Crossing::new(Down, Down, true),
            Crossing::new(Down, Down, false),
            Crossing::new(Up, Down, false),
            Crossing::new(Up, Down, true),
        ];
        let signs: Vec<i32> = all.iter().map(Crossing::sign).collect();
        assert_eq!(signs, [1, -1, 1, -1, 1, -1, 1, -1]);
        for c in all {
            assert_eq!(Event::from_token(&c.token()), Some(Event::Cross(c)));
            assert_eq!(c.cancelling().cancelling(), c);
        }
    }

    #[test]
    fn xi_writhe_and_shape() {
        for n in -3..=3 {
            let x = MorseWord::xi(n);
            assert_eq!(x.writhe(), 2 * n);
            assert_eq!(x.crossing_count(), 2 * n.unsigned_abs() as usize);
            assert!(x.is_normal());
        }
        assert_eq!(MorseWord::xi(2).compose(&MorseWord::xi(1)), MorseWord::xi(3));
        assert_eq!(MorseWord::xi(0), MorseWord::trivial());
    }

    #[test]
    fn trefoil_closure() {
        let d = MorseWord::from_braid(&[1, 1, 1], 2).unwrap();
        assert_eq!(d.writhe(), 3);
        let n = d.normalize();
        assert_eq!(n.crossing_count(), 4);
        assert_eq!(n.writhe(), 2);
        let c = d.corrected().unwrap();
        assert_eq!(c.writhe(), 0);
        assert_eq!(c.crossing_count(), 6);
    }

    #[test]
    fn braid_errors() {
        assert!(matches!(
            MorseWord::from_braid(&[1, 3], 3),
            Err(DiagramError::GeneratorOutOfRange { generator: 3, .. })
        ));
        assert!(matches!(MorseWord::from_braid(&[1, 1], 2), Err(DiagramError::NotAKnot { components: 2 })));
        assert_eq!(MorseWord::from_braid(&[], 1).unwrap(), MorseWord::trivial());
    }

    #[test]
    fn closed_component_is_rejected() {
        // A long strand next to a free circle.
        let t = Tangle::new(vec![Up], vec![Step::new(Event::CupRL, 1), Step::new(Event::CapRL, 1)]);
        assert!(t.is_err());
        let t = Tangle::new(vec![Up], vec![Step::new(Event::CupRL, 1), Step::new(Event::CapLR, 1)]).unwrap();
        assert_eq!(MorseWord::from_tangle(t), Err(DiagramError::NotConnected));
    }

    #[test]
    fn json_roundtrip() {
        let d = MorseWord::from_braid(&[1, -2, 1, -2], 3).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        let back: MorseWord = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }

    fn arb_knot() -> impl Strategy<Value = MorseWord> {
        prop::sample::select(vec![
            (vec![1, 1, 1], 2usize),
            (vec![1, -2, 1, -2], 3),
            (vec![1, 1, 1, -2, 1, -2], 3),
            (vec![1, 1, -2, 1, 3, -2, -2, -2, 3], 4),
            (vec![], 1),
        ])
        .prop_flat_map(|(w, n)| {
            let base = MorseWord::from_braid(&w, n).unwrap();
            (Just(base), any::<u64>(), 0usize..12)
        })
        .prop_map(|(base, seed, len)| random_move_sequence(&base, seed, len))
    }

    proptest! {
        #[test]
        fn normalization_invariants(d in arb_knot()) {
            let n = d.normalize();
            prop_assert!(n.is_normal());
            prop_assert_eq!(n.normalize(), n.clone());
            let lr = d.steps().iter().filter(|s| matches!(s.event, Event::CapLR | Event::CupLR)).count();
            prop_assert_eq!(n.crossing_count(), d.crossing_count() + lr);
            prop_assert_eq!(n.writhe() % 2, 0);
            let c = d.corrected().unwrap();
            prop_assert_eq!(c.writhe(), 0);
            prop_assert!(c.is_normal());
        }

        #[test]
        fn text_roundtrip(d in arb_knot()) {
            prop_assert_eq!(MorseWord::parse(&d.to_text()).unwrap(), d);
        }
    }
}
