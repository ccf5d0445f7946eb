//! Knot diagrams as (1,1)-tangles in Morse position, planar-diagram codes, and
//! conversion between them.
//!
//! A Morse word is read bottom to top. The bottom and top slices each carry a
//! single open strand at position 0, oriented upward. `cup p` inserts two new
//! strands at positions `p, p+1`; `cap p` joins strands `p, p+1`; `x+ p` and
//! `x- p` cross strands `p, p+1`, both of which must point up. In a positive
//! crossing the strand entering at the lower left passes over.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, ParseErrorKind, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    Cup(usize),
    Cap(usize),
    Cross(usize, Sign),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    Up,
    Down,
}

/// One item met while walking the knot from the bottom end to the top end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// Passing a weighted extremum: `twist = +1` for a cap whose left strand
    /// points up, `-1` for a cup whose left strand points down.
    Turn { event: usize, twist: i8 },
    /// Passing through a crossing. `over` says whether the walk is on the
    /// over-strand, `from_left` whether it enters at the lower-left corner.
    Cross { event: usize, crossing: usize, over: bool, from_left: bool, first: bool },
}

/// Combinatorial data of a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagramStats {
    pub crossing_count: usize,
    pub writhe: i64,
    pub c: usize,
}

/// A validated (1,1)-tangle in Morse position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseTangle {
    events: Vec<Event>,
    widths: Vec<usize>,
    orient: Vec<Vec<Dir>>,
    steps: Vec<Step>,
    crossing_events: Vec<usize>,
    boundary_zero: Vec<bool>,
}

impl MorseTangle {
    /// The 0-crossing tangle.
    pub fn unknot() -> Self {
        Self::from_events(Vec::new()).expect("empty word is valid")
    }

    pub fn from_events(events: Vec<Event>) -> Result<Self> {
        let lines: Vec<usize> = (1..=events.len()).collect();
        build(events, &lines)
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    /// Width of slice `s` (slice `s` lies just below event `s`).
    pub fn width(&self, s: usize) -> usize {
        self.widths[s]
    }

    pub fn max_width(&self) -> usize {
        self.widths.iter().copied().max().unwrap_or(1)
    }

    /// Orientation of each strand in slice `s`.
    pub fn orientation(&self, s: usize) -> &[Dir] {
        &self.orient[s]
    }

    /// The walk from the bottom end to the top end.
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn crossing_count(&self) -> usize {
        self.crossing_events.len()
    }

    /// Event index of the `i`-th crossing (in bottom-to-top order).
    pub fn crossing_event(&self, i: usize) -> usize {
        self.crossing_events[i]
    }

    pub fn crossing_sign(&self, i: usize) -> Sign {
        match self.events[self.crossing_events[i]] {
            Event::Cross(_, s) => s,
            _ => unreachable!("crossing index points at a crossing event"),
        }
    }

    /// Crossings whose color is forced to zero by the open ends: the first
    /// crossing met when it is met as an overpass, and the last one when it
    /// is left as an underpass.
    pub fn boundary_zero(&self) -> &[bool] {
        &self.boundary_zero
    }

    pub fn writhe(&self) -> i64 {
        (0..self.crossing_count()).map(|i| self.crossing_sign(i).value()).sum()
    }

    pub fn stats(&self) -> DiagramStats {
        let crossing_count = self.crossing_count();
        DiagramStats { crossing_count, writhe: self.writhe(), c: crossing_count.saturating_sub(2) }
    }

    /// Mirror image: every crossing changes sign.
    pub fn mirror(&self) -> Self {
        let events = self
            .events
            .iter()
            .map(|e| match *e {
                Event::Cross(p, s) => Event::Cross(p, s.flip()),
                other => other,
            })
            .collect();
        Self::from_events(events).expect("mirror of a valid tangle is valid")
    }

    /// The Morse word in the text grammar accepted by [`parse_morse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            let line = match *e {
                Event::Cup(p) => format!("cup {p}\n"),
                Event::Cap(p) => format!("cap {p}\n"),
                Event::Cross(p, Sign::Pos) => format!("x+ {p}\n"),
                Event::Cross(p, Sign::Neg) => format!("x- {p}\n"),
            };
            out.push_str(&line);
        }
        out
    }
}

impl fmt::Display for MorseTangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn perr(kind: ParseErrorKind, line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { kind, line, column, message: message.into() }
}

/// Parses a Morse word: one event per line, `#` starts a comment.
pub fn parse_morse(text: &str) -> Result<MorseTangle> {
    let mut events = Vec::new();
    let mut lines = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut col = 0;
        for piece in body.split(|c: char| c.is_whitespace()) {
            if !piece.is_empty() {
                tokens.push((piece, col + 1));
            }
            col += piece.chars().count() + 1;
        }
        if tokens.is_empty() {
            continue;
        }
        let (kw, kcol) = tokens[0];
        if tokens.len() != 2 {
            let (_, c) = tokens.get(2).copied().unwrap_or((kw, kcol));
            return Err(perr(
                ParseErrorKind::MalformedToken,
                line_no,
                c,
                "expected `<event> <position>`",
            ));
        }
        let (num, ncol) = tokens[1];
        let pos: usize = num.parse().map_err(|_| {
            perr(ParseErrorKind::MalformedToken, line_no, ncol, format!("bad position `{num}`"))
        })?;
        let ev = match kw {
            "cup" => Event::Cup(pos),
            "cap" => Event::Cap(pos),
            "x+" => Event::Cross(pos, Sign::Pos),
            "x-" => Event::Cross(pos, Sign::Neg),
            _ => {
                return Err(perr(
                    ParseErrorKind::MalformedToken,
                    line_no,
                    kcol,
                    format!("unknown event `{kw}`"),
                ))
            }
        };
        events.push(ev);
        lines.push(line_no);
    }
    build(events, &lines)
}

fn build(events: Vec<Event>, lines: &[usize]) -> Result<MorseTangle> {
    // widths
    let mut widths = Vec::with_capacity(events.len() + 1);
    let mut w = 1usize;
    widths.push(w);
    for (i, e) in events.iter().enumerate() {
        let ok = match *e {
            Event::Cup(p) => p <= w,
            Event::Cap(p) | Event::Cross(p, _) => p + 1 < w,
        };
        if !ok {
            return Err(perr(
                ParseErrorKind::WidthInconsistency,
                lines[i],
                1,
                format!("position out of range for slice width {w}"),
            ));
        }
        match e {
            Event::Cup(_) => w += 2,
            Event::Cap(_) => w -= 2,
            Event::Cross(..) => {}
        }
        widths.push(w);
    }
    if w != 1 {
        let line = lines.last().copied().unwrap_or(1);
        return Err(perr(
            ParseErrorKind::WidthInconsistency,
            line,
            1,
            format!("top slice has width {w}, expected 1"),
        ));
    }

    let mut crossing_events = Vec::new();
    let mut crossing_of = vec![usize::MAX; events.len()];
    for (i, e) in events.iter().enumerate() {
        if matches!(e, Event::Cross(..)) {
            crossing_of[i] = crossing_events.len();
            crossing_events.push(i);
        }
    }

    // walk
    let n_ev = events.len();
    let mut orient: Vec<Vec<Option<Dir>>> = widths.iter().map(|&w| vec![None; w]).collect();
    let mut steps = Vec::new();
    let mut seen_cross = vec![false; crossing_events.len()];
    let (mut s, mut p, mut dir) = (0usize, 0usize, Dir::Up);
    let total: usize = widths.iter().sum();
    let mut visited = 0usize;
    loop {
        if orient[s][p].is_some() {
            return Err(Error::Inconsistent("walk revisited a strand".to_string()));
        }
        orient[s][p] = Some(dir);
        visited += 1;
        match dir {
            Dir::Up => {
                if s == n_ev {
                    break;
                }
                match events[s] {
                    Event::Cup(c) => {
                        p = if p >= c { p + 2 } else { p };
                        s += 1;
                    }
                    Event::Cap(c) => {
                        if p == c {
                            steps.push(Step::Turn { event: s, twist: 1 });
                            p = c + 1;
                            dir = Dir::Down;
                        } else if p == c + 1 {
                            p = c;
                            dir = Dir::Down;
                        } else {
                            p = if p > c + 1 { p - 2 } else { p };
                            s += 1;
                        }
                    }
                    Event::Cross(c, sign) => {
                        if p == c || p == c + 1 {
                            let from_left = p == c;
                            let over = from_left == (sign == Sign::Pos);
                            let k = crossing_of[s];
                            steps.push(Step::Cross {
                                event: s,
                                crossing: k,
                                over,
                                from_left,
                                first: !seen_cross[k],
                            });
                            seen_cross[k] = true;
                            p = if from_left { c + 1 } else { c };
                        }
                        s += 1;
                    }
                }
            }
            Dir::Down => {
                if s == 0 {
                    return Err(perr(
                        ParseErrorKind::OrientationViolation,
                        lines.first().copied().unwrap_or(1),
                        1,
                        "strand leaves through the bottom pointing down",
                    ));
                }
                match events[s - 1] {
                    Event::Cup(c) => {
                        if p == c {
                            steps.push(Step::Turn { event: s - 1, twist: -1 });
                            p = c + 1;
                            dir = Dir::Up;
                        } else if p == c + 1 {
                            p = c;
                            dir = Dir::Up;
                        } else {
                            p = if p > c + 1 { p - 2 } else { p };
                            s -= 1;
                        }
                    }
                    Event::Cap(c) => {
                        p = if p >= c { p + 2 } else { p };
                        s -= 1;
                    }
                    Event::Cross(c, _) => {
                        if p == c || p == c + 1 {
                            return Err(perr(
                                ParseErrorKind::OrientationViolation,
                                lines[s - 1],
                                1,
                                "crossing strand points down",
                            ));
                        }
                        s -= 1;
                    }
                }
            }
        }
    }
    if p != 0 {
        return Err(Error::Inconsistent("walk ended away from the top end".to_string()));
    }
    if visited != total {
        return Err(Error::MultiComponent);
    }
    let orient: Vec<Vec<Dir>> =
        orient.into_iter().map(|v| v.into_iter().map(|d| d.expect("covered")).collect()).collect();

    let mut boundary_zero = vec![false; crossing_events.len()];
    let cross_steps: Vec<&Step> = steps.iter().filter(|s| matches!(s, Step::Cross { .. })).collect();
    if let Some(Step::Cross { crossing, over: true, .. }) = cross_steps.first() {
        boundary_zero[*crossing] = true;
    }
    if let Some(Step::Cross { crossing, over: false, .. }) = cross_steps.last() {
        boundary_zero[*crossing] = true;
    }

    Ok(MorseTangle { events, widths, orient, steps, crossing_events, boundary_zero })
}

/// One crossing of a planar-diagram code: arc labels counterclockwise from
/// the incoming under-strand, with an optional explicit sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PdCrossing {
    pub arcs: [u32; 4],
    pub sign: Sign,
}

/// A validated planar-diagram code of a knot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdCode {
    crossings: Vec<PdCrossing>,
}

impl PdCode {
    pub fn unknot() -> Self {
        PdCode { crossings: Vec::new() }
    }

    /// Validates raw crossings; signs are derived from the orientation, and
    /// any explicit sign must agree with it.
    pub fn new(raw: &[([u32; 4], Option<Sign>)]) -> Result<Self> {
        let positions: Vec<(usize, usize)> = (0..raw.len()).map(|i| (1, i + 1)).collect();
        from_raw(raw, &positions)
    }

    pub fn crossings(&self) -> &[PdCrossing] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    pub fn arc_count(&self) -> usize {
        2 * self.crossings.len()
    }

    /// The two (crossing, slot) endpoints of every arc label.
    pub fn endpoints(&self) -> Vec<[(usize, usize); 2]> {
        endpoints_of(&self.crossings.iter().map(|c| c.arcs).collect::<Vec<_>>())
    }

    /// Mirror image: the over- and under-strands swap at every crossing.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.arcs;
                // the new under-strand is the old over-strand, read from its
                // incoming end
                let arcs = match c.sign {
                    Sign::Pos => [d, a, b, cc],
                    Sign::Neg => [b, cc, d, a],
                };
                PdCrossing { arcs, sign: c.sign.flip() }
            })
            .collect();
        PdCode { crossings }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.crossings {
            let s = if c.sign == Sign::Pos { '+' } else { '-' };
            let [a, b, cc, d] = c.arcs;
            out.push_str(&format!("X{s}[{a},{b},{cc},{d}]\n"));
        }
        out
    }
}

fn endpoints_of(arcs: &[[u32; 4]]) -> Vec<[(usize, usize); 2]> {
    let m = 2 * arcs.len();
    let mut ends = vec![[(usize::MAX, 0); 2]; m + 1];
    let mut fill = vec![0usize; m + 1];
    for (i, x) in arcs.iter().enumerate() {
        for (slot, &l) in x.iter().enumerate() {
            let l = l as usize;
            ends[l][fill[l]] = (i, slot);
            fill[l] += 1;
        }
    }
    ends
}

fn from_raw(raw: &[([u32; 4], Option<Sign>)], pos: &[(usize, usize)]) -> Result<PdCode> {
    let m = 2 * raw.len() as u32;
    let mut count = vec![0usize; m as usize + 1];
    for (i, (arcs, _)) in raw.iter().enumerate() {
        for &l in arcs {
            if l == 0 || l > m {
                return Err(perr(
                    ParseErrorKind::ArcLabel,
                    pos[i].0,
                    pos[i].1,
                    format!("arc label {l} outside 1..={m}"),
                ));
            }
            count[l as usize] += 1;
        }
    }
    for l in 1..=m as usize {
        if count[l] != 2 {
            let i = raw.iter().position(|(a, _)| a.contains(&(l as u32))).unwrap_or(0);
            let (line, col) = pos.get(i).copied().unwrap_or((1, 1));
            return Err(perr(
                ParseErrorKind::ArcLabel,
                line,
                col,
                format!("arc label {l} appears {} times", count[l]),
            ));
        }
    }
    if raw.is_empty() {
        return Ok(PdCode::unknot());
    }
    let arcs: Vec<[u32; 4]> = raw.iter().map(|(a, _)| *a).collect();
    let ends = endpoints_of(&arcs);
    // walk the knot along the under-strand orientation
    let mut over_in: Vec<Option<usize>> = vec![None; raw.len()];
    let mut under_seen = vec![false; raw.len()];
    under_seen[0] = true;
    let (mut x, mut slot) = (0usize, 2usize);
    let mut arcs_seen = 0usize;
    loop {
        let label = arcs[x][slot] as usize;
        arcs_seen += 1;
        let other = if ends[label][0] == (x, slot) { ends[label][1] } else { ends[label][0] };
        let (y, t) = other;
        match t {
            0 => {
                if under_seen[y] {
                    break;
                }
                under_seen[y] = true;
                x = y;
                slot = 2;
            }
            2 => {
                let (line, col) = pos[y];
                return Err(perr(
                    ParseErrorKind::OrientationViolation,
                    line,
                    col,
                    "under-strand enters through its outgoing slot",
                ));
            }
            _ => {
                if over_in[y].is_some() {
                    let (line, col) = pos[y];
                    return Err(perr(
                        ParseErrorKind::OrientationViolation,
                        line,
                        col,
                        "over-strand traversed twice",
                    ));
                }
                over_in[y] = Some(t);
                x = y;
                slot = 4 - t;
            }
        }
        if arcs_seen > m as usize + 1 {
            break;
        }
    }
    if arcs_seen != m as usize || under_seen.iter().any(|s| !s) || over_in.iter().any(Option::is_none) {
        return Err(Error::MultiComponent);
    }
    let mut crossings = Vec::with_capacity(raw.len());
    for (i, (a, given)) in raw.iter().enumerate() {
        let sign = if over_in[i] == Some(3) { Sign::Pos } else { Sign::Neg };
        if let Some(g) = given {
            if *g != sign {
                let (line, col) = pos[i];
                return Err(perr(
                    ParseErrorKind::SignMismatch,
                    line,
                    col,
                    "declared sign disagrees with the orientation",
                ));
            }
        }
        crossings.push(PdCrossing { arcs: *a, sign });
    }
    Ok(PdCode { crossings })
}

/// Parses `X[a,b,c,d]`, `X+[...]` or `X-[...]` tokens separated by
/// whitespace, commas or semicolons; `#` starts a comment. An optional
/// `PD[...]` wrapper is accepted.
pub fn parse_pd(text: &str) -> Result<PdCode> {
    let mut raw = Vec::new();
    let mut pos = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        let body = line.split('#').next().unwrap_or("");
        let chars: Vec<char> = body.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let ch = chars[i];
            if ch.is_whitespace() || ch == ',' || ch == ';' {
                i += 1;
                continue;
            }
            if ch == 'P' && chars.get(i + 1) == Some(&'D') && chars.get(i + 2) == Some(&'[') {
                i += 3;
                continue;
            }
            if ch == ']' {
                i += 1;
                continue;
            }
            if ch != 'X' {
                return Err(perr(
                    ParseErrorKind::MalformedToken,
                    line_no,
                    i + 1,
                    format!("unexpected `{ch}`"),
                ));
            }
            let col = i + 1;
            i += 1;
            let sign = match chars.get(i) {
                Some('+') => {
                    i += 1;
                    Some(Sign::Pos)
                }
                Some('-') => {
                    i += 1;
                    Some(Sign::Neg)
                }
                _ => None,
            };
            if chars.get(i) != Some(&'[') {
                return Err(perr(ParseErrorKind::MalformedToken, line_no, i + 1, "expected `[`"));
            }
            i += 1;
            let close = chars[i..].iter().position(|&c| c == ']').ok_or_else(|| {
                perr(ParseErrorKind::MalformedToken, line_no, col, "unterminated crossing")
            })?;
            let inner: String = chars[i..i + close].iter().collect();
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            if parts.len() != 4 {
                return Err(perr(
                    ParseErrorKind::MalformedToken,
                    line_no,
                    col,
                    "a crossing has four arc labels",
                ));
            }
            let mut arcs = [0u32; 4];
            for (k, p) in parts.iter().enumerate() {
                arcs[k] = p.parse().map_err(|_| {
                    perr(ParseErrorKind::MalformedToken, line_no, col, format!("bad arc label `{p}`"))
                })?;
            }
            raw.push((arcs, sign));
            pos.push((line_no, col));
            i += close + 1;
        }
    }
    from_raw(&raw, &pos)
}

// ---------------------------------------------------------------------------
// PD code to Morse word

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct FrontierItem {
    // arc label, or 0 for the top end of the cut arc
    label: u32,
    // (crossing, slot) this strand still has to reach
    target: (usize, usize),
    up: bool,
}

/// Converts a knot PD code to a Morse word, cutting the knot open on an arc
/// that runs from an underpass to an overpass.
pub fn pd_to_morse(pd: &PdCode) -> Result<MorseTangle> {
    if pd.is_empty() {
        return Ok(MorseTangle::unknot());
    }
    let xs = pd.crossings();
    let ends = pd.endpoints();
    let is_in = |x: usize, slot: usize| -> bool {
        match slot {
            0 => true,
            2 => false,
            1 => xs[x].sign == Sign::Neg,
            _ => xs[x].sign == Sign::Pos,
        }
    };
    let other_end = |label: usize, at: (usize, usize)| -> (usize, usize) {
        if ends[label][0] == at {
            ends[label][1]
        } else {
            ends[label][0]
        }
    };
    // cut arc: leaves an underpass (slot 2) and enters an overpass
    let mut candidates = Vec::new();
    for (x, c) in xs.iter().enumerate() {
        let label = c.arcs[2] as usize;
        let (y, t) = other_end(label, (x, 2));
        if t == 1 || t == 3 {
            candidates.push((label, (x, 2), (y, t)));
        }
    }
    let mut last_err = Error::Schedule("no arc runs from an underpass to an overpass".to_string());
    for (label, tail, head) in candidates {
        match schedule(pd, label as u32, tail, head, &is_in, &other_end) {
            Ok(events) => {
                let t = MorseTangle::from_events(events)?;
                if t.writhe() != pd.writhe() || t.crossing_count() != pd.len() {
                    return Err(Error::Inconsistent("scheduled word lost a crossing".to_string()));
                }
                return Ok(t);
            }
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

fn schedule(
    pd: &PdCode,
    cut: u32,
    tail: (usize, usize),
    head: (usize, usize),
    is_in: &dyn Fn(usize, usize) -> bool,
    other_end: &dyn Fn(usize, (usize, usize)) -> (usize, usize),
) -> Result<Vec<Event>> {
    let xs = pd.crossings();
    let start = vec![FrontierItem { label: cut, target: head, up: true }];
    let mut placed = vec![false; xs.len()];
    let mut seen = BTreeSet::new();
    let mut events = Vec::new();
    let ctx = Ctx { xs, cut, tail, is_in, other_end };
    let mut budget = 200_000usize;
    if search(&ctx, start, &mut placed, &mut events, &mut seen, &mut budget) {
        Ok(events)
    } else {
        Err(Error::Schedule(format!("no sweep order found cutting arc {cut}")))
    }
}

struct Ctx<'a> {
    xs: &'a [PdCrossing],
    cut: u32,
    tail: (usize, usize),
    is_in: &'a dyn Fn(usize, usize) -> bool,
    other_end: &'a dyn Fn(usize, (usize, usize)) -> (usize, usize),
}

fn search(
    ctx: &Ctx<'_>,
    frontier: Vec<FrontierItem>,
    placed: &mut Vec<bool>,
    events: &mut Vec<Event>,
    seen: &mut BTreeSet<(Vec<FrontierItem>, Vec<bool>)>,
    budget: &mut usize,
) -> bool {
    if placed.iter().all(|&p| p) {
        return frontier.len() == 1 && frontier[0].label == 0 && frontier[0].up;
    }
    if *budget == 0 || !seen.insert((frontier.clone(), placed.clone())) {
        return false;
    }
    *budget -= 1;
    // candidate blocks, most-connected first
    let mut moves = Vec::new();
    for x in 0..ctx.xs.len() {
        if placed[x] {
            continue;
        }
        let idx: Vec<usize> = (0..frontier.len()).filter(|&i| frontier[i].target.0 == x).collect();
        if idx.is_empty() {
            continue;
        }
        let f = idx[0];
        let m = idx.len();
        if idx[m - 1] - f + 1 != m {
            continue;
        }
        let j = frontier[f].target.1;
        if (0..m).any(|r| frontier[f + r].target.1 != (j + r) % 4) {
            continue;
        }
        moves.push((m, x, f, j));
    }
    moves.sort_by(|a, b| b.0.cmp(&a.0));
    for (m, x, f, j) in moves {
        let mark = events.len();
        let next = attach(ctx, &frontier, x, f, j, m, events);
        placed[x] = true;
        if search(ctx, next, placed, events, seen, budget) {
            return true;
        }
        placed[x] = false;
        events.truncate(mark);
    }
    false
}

/// Places crossing `x` above the frontier block `f..f+m` whose first slot is
/// `j`, emitting the events and returning the new frontier.
fn attach(
    ctx: &Ctx<'_>,
    frontier: &[FrontierItem],
    x: usize,
    f: usize,
    j: usize,
    m: usize,
    events: &mut Vec<Event>,
) -> Vec<FrontierItem> {
    let sign = ctx.xs[x].sign;
    let slot = |r: usize| (j + r) % 4;
    let y1_in = (ctx.is_in)(x, slot(0));
    let y2_in = (ctx.is_in)(x, slot(1));
    if m == 1 {
        events.push(Event::Cup(f + 1));
    }
    match (y1_in, y2_in) {
        (true, true) => events.push(Event::Cross(f, sign)),
        (true, false) => {
            events.push(Event::Cup(f));
            events.push(Event::Cross(f + 1, sign));
            events.push(Event::Cap(f + 2));
        }
        (false, true) => {
            events.push(Event::Cup(f + 2));
            events.push(Event::Cross(f + 1, sign));
            events.push(Event::Cap(f));
        }
        (false, false) => {
            events.push(Event::Cup(f));
            events.push(Event::Cup(f + 1));
            events.push(Event::Cross(f + 2, sign));
            events.push(Event::Cap(f + 3));
            events.push(Event::Cap(f + 2));
        }
    }
    let top = |r: usize| -> FrontierItem {
        let s = slot(r);
        let label = ctx.xs[x].arcs[s];
        let out = !(ctx.is_in)(x, s);
        if (x, s) == ctx.tail && label == ctx.cut {
            return FrontierItem { label: 0, target: (usize::MAX, 0), up: out };
        }
        let target = (ctx.other_end)(label as usize, (x, s));
        FrontierItem { label, target, up: out }
    };
    // new items above the crossing, left to right: slot j+3, then j+2 when
    // it was not in the block; block slots j+2, j+3 get capped against them
    let mut next: Vec<FrontierItem> = frontier[..f].to_vec();
    next.push(top(3));
    next.push(top(2));
    if m == 1 {
        next.push(top(1));
    }
    let rest = &frontier[f + m..];
    if m >= 3 {
        // slot j+2 closes against the block's third strand
        events.push(Event::Cap(f + 1));
        next.pop();
    }
    if m == 4 {
        events.push(Event::Cap(f));
        next.pop();
    }
    next.extend_from_slice(rest);
    // arcs with both ends at `x`: their two new items are adjacent
    loop {
        let mut closed = false;
        for i in 0..next.len().saturating_sub(1) {
            let (a, b) = (next[i], next[i + 1]);
            if a.label != 0 && a.label == b.label && a.target.0 == x && b.target.0 == x {
                events.push(Event::Cap(i));
                next.drain(i..i + 2);
                closed = true;
                break;
            }
        }
        if !closed {
            break;
        }
    }
    next
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(e: Error) -> ParseErrorKind {
        match e {
            Error::Parse { kind, .. } => kind,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn empty_word_is_unknot() {
        let t = parse_morse("# nothing\n\n").unwrap();
        assert_eq!(t.stats(), DiagramStats { crossing_count: 0, writhe: 0, c: 0 });
        assert!(t.steps().is_empty());
    }

    #[test]
    fn kink_walk() {
        let t = parse_morse("cup 1\nx+ 0\ncap 1\n").unwrap();
        assert_eq!(t.writhe(), 1);
        assert_eq!(t.orientation(1), &[Dir::Up, Dir::Up, Dir::Down]);
        let crossings: Vec<_> =
            t.steps().iter().filter(|s| matches!(s, Step::Cross { .. })).collect();
        assert_eq!(crossings.len(), 2);
        assert_eq!(t.mirror().writhe(), -1);
    }

    #[test]
    fn diagnostics_are_distinct() {
        assert_eq!(kind(parse_morse("cupp 0").unwrap_err()), ParseErrorKind::MalformedToken);
        assert_eq!(kind(parse_morse("cup x").unwrap_err()), ParseErrorKind::MalformedToken);
        assert_eq!(kind(parse_morse("cap 0").unwrap_err()), ParseErrorKind::WidthInconsistency);
        assert_eq!(kind(parse_morse("cup 0").unwrap_err()), ParseErrorKind::WidthInconsistency);
        // crossing a downward strand
        assert_eq!(
            kind(parse_morse("cup 1\nx+ 1\ncap 0").unwrap_err()),
            ParseErrorKind::OrientationViolation
        );
        // a separate closed circle
        assert_eq!(parse_morse("cup 1\ncap 1").unwrap_err(), Error::MultiComponent);
    }

    #[test]
    fn pd_labels_and_signs() {
        let trefoil = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        assert_eq!(trefoil.writhe(), -3);
        let e = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,7]").unwrap_err();
        assert_eq!(kind(e), ParseErrorKind::ArcLabel);
        let e = parse_pd("X+[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap_err();
        assert_eq!(kind(e), ParseErrorKind::SignMismatch);
        assert_eq!(trefoil.mirror().writhe(), 3);
        assert_eq!(parse_pd(&trefoil.to_text()).unwrap(), trefoil);
    }

    #[test]
    fn pd_to_morse_corpus_shapes() {
        let fig8 = parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap();
        let t = pd_to_morse(&fig8).unwrap();
        assert_eq!(t.stats(), DiagramStats { crossing_count: 4, writhe: 0, c: 2 });
        let trefoil = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let t = pd_to_morse(&trefoil).unwrap();
        assert_eq!(t.stats().writhe, -3);
        assert_eq!(pd_to_morse(&PdCode::unknot()).unwrap(), MorseTangle::unknot());
        // first crossing met as an overpass, last left as an underpass
        let cross: Vec<_> = t.steps().iter().filter(|s| matches!(s, Step::Cross { .. })).collect();
        assert!(matches!(cross.first(), Some(Step::Cross { over: true, .. })));
        assert!(matches!(cross.last(), Some(Step::Cross { over: false, .. })));
    }
}
