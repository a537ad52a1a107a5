//! Line-per-slice text format.
//!
//! ```text
//! # trefoil, bottom slice first
//! u cupRL
//! x+uu d
//! ```
//!
//! Tokens: `u` (or `|`) and `d` for strands, `capLR capRL cupLR cupRL`, and
//! crossings `x<sign><over><under>` such as `x+uu` or `x-du`. `#` starts a
//! comment. The bottom of the first slice is the input signature.

use super::{apply_step, signature_string, DiagramError, Event, Orientation, Step, Tangle};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TextError {
    #[error("line {line}, column {column}: unknown token `{token}`")]
    UnknownToken { line: usize, column: usize, token: String },
    #[error("empty diagram text")]
    Empty,
}

pub fn parse_tangle(text: &str) -> Result<Tangle, DiagramError> {
    let mut rows: Vec<(usize, Vec<Event>)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut row = Vec::new();
        let mut column = 1;
        for tok in line.split_whitespace() {
            column = raw.find(tok).map_or(column, |c| c + 1).max(column);
            let ev = Event::from_token(tok).ok_or_else(|| TextError::UnknownToken {
                line: ln + 1,
                column,
                token: tok.to_string(),
            })?;
            row.push(ev);
        }
        if !row.is_empty() {
            rows.push((ln + 1, row));
        }
    }
    let Some((_, first)) = rows.first() else {
        return Err(TextError::Empty.into());
    };
    let bottom: Vec<Orientation> = first.iter().flat_map(Event::inputs).collect();
    let mut sig = bottom.clone();
    let mut steps = Vec::new();
    for (ln, row) in &rows {
        let ins: Vec<Orientation> = row.iter().flat_map(Event::inputs).collect();
        if ins != sig {
            return Err(DiagramError::ArityMismatch {
                slice: *ln,
                expected: signature_string(&sig),
                found: signature_string(&ins),
            });
        }
        // Split into elementary steps, left to right.
        let mut offset = 0;
        for ev in row {
            if !ev.is_strand() {
                let step = Step::new(*ev, offset);
                sig = apply_step(&sig, &step);
                steps.push(step);
            }
            offset += ev.out_arity();
        }
    }
    Tangle::new(bottom, steps)
}

pub(super) fn render(t: &Tangle) -> String {
    if t.is_empty() {
        return t.bottom().iter().map(|o| o.letter().to_string()).collect::<Vec<_>>().join(" ");
    }
    t.slices()
        .iter()
        .map(|row| row.iter().map(Event::token).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::MorseWord;

    #[test]
    fn parses_multi_event_slices() {
        let t = parse_tangle("u cupRL\nx+uu d\nu capLR").unwrap();
        assert_eq!(t.len(), 3);
        let w = MorseWord::parse("| cupRL\ncapRL u").unwrap_err();
        assert!(matches!(w, DiagramError::ArityMismatch { slice: 2, .. }));
        // Several events in one slice.
        let t = parse_tangle("cupRL cupRL\nu capRL d").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.top(), vec![Orientation::Up, Orientation::Down]);
    }

    #[test]
    fn arity_mismatch_names_slice() {
        let e = parse_tangle("u\ncapRL capRL").unwrap_err();
        assert_eq!(
            e,
            DiagramError::ArityMismatch { slice: 2, expected: "u".into(), found: "dudu".into() }
        );
        let e = parse_tangle("u\nu\nx+uu").unwrap_err();
        assert!(matches!(e, DiagramError::ArityMismatch { slice: 3, .. }));
    }

    #[test]
    fn syntax_errors_report_position() {
        let e = parse_tangle("u\nu  zap").unwrap_err();
        assert_eq!(
            e,
            DiagramError::Text(TextError::UnknownToken { line: 2, column: 4, token: "zap".into() })
        );
        assert_eq!(parse_tangle("# nothing\n"), Err(TextError::Empty.into()));
    }

    #[test]
    fn identity_slices_vanish() {
        let a = MorseWord::parse("u\nu\nu").unwrap();
        assert_eq!(a, MorseWord::trivial());
        assert_eq!(a.to_text(), "u");
    }
}
