//! Planar diagram (PD) codes for knots.
//!
//! A crossing `X(a,b,c,d)` lists its four arc labels counterclockwise,
//! starting from the incoming under-strand `a`; the under-strand leaves
//! through `c`. Arc labels run `1..=2n` and increase by one (cyclically)
//! along the orientation of the knot. The over-strand runs `d -> b` at a
//! positive crossing and `b -> d` at a negative one.

use std::fmt;

use thiserror::Error;

/// Arc label as it appears in the PD text.
pub type Arc = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub arcs: [Arc; 4],
}

impl Crossing {
    pub fn new(a: Arc, b: Arc, c: Arc, d: Arc) -> Self {
        Crossing { arcs: [a, b, c, d] }
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.arcs;
        write!(f, "X({a},{b},{c},{d})")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// One broken rule found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A label is zero.
    NonPositive { crossing: usize },
    /// A single crossing uses the same label more than twice.
    RepeatedInCrossing { crossing: usize, arc: Arc },
    /// A label occurs a number of times other than two.
    Occurrence { arc: Arc, count: usize },
    /// A label lies outside `1..=2n`.
    OutOfRange { arc: Arc, max: Arc },
    /// Labels do not increase by one along the strand through a crossing.
    Orientation { crossing: usize, arc: Arc },
    /// Not every arc is reached by walking along the knot from arc `a` of the first crossing.
    MultiComponent { unreached: Vec<Arc> },
    /// The basepoint is not one of the diagram's arcs.
    Basepoint { arc: Arc },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonPositive { crossing } => {
                write!(f, "positivity: crossing {crossing} has a non-positive arc label")
            }
            Violation::RepeatedInCrossing { crossing, arc } => {
                write!(f, "repetition: crossing {crossing} uses arc {arc} more than twice")
            }
            Violation::Occurrence { arc, count: 1 } => {
                write!(f, "occurrence count: arc {arc} appears once")
            }
            Violation::Occurrence { arc, count } => {
                write!(f, "occurrence count: arc {arc} appears {count} times")
            }
            Violation::OutOfRange { arc, max } => {
                write!(f, "range: arc {arc} is outside 1..={max}")
            }
            Violation::Orientation { crossing, arc } => write!(
                f,
                "orientation: at crossing {crossing}, arc {arc} is not followed by the next label"
            ),
            Violation::MultiComponent { unreached } => {
                let list: Vec<String> = unreached.iter().map(|a| a.to_string()).collect();
                write!(
                    f,
                    "components: diagram is not a single knot, arcs {} are on another component",
                    list.join(",")
                )
            }
            Violation::Basepoint { arc } => write!(f, "basepoint: arc {arc} is not in the diagram"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PdError {
    #[error("syntax error at byte {offset}: malformed token `{token}`")]
    Syntax { offset: usize, token: String },
    #[error("invalid diagram: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("braid: {0}")]
    Braid(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// A validated single-component PD code with orientation data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    signs: Vec<Sign>,
    basepoint: Arc,
}

impl PlanarDiagram {
    /// The zero-crossing unknot, with one formal arc labelled 1.
    pub fn unknot() -> Self {
        PlanarDiagram { crossings: Vec::new(), signs: Vec::new(), basepoint: 1 }
    }

    /// Validates `crossings`; the basepoint defaults to arc 1.
    pub fn new(crossings: Vec<Crossing>) -> Result<Self, PdError> {
        Self::with_basepoint(crossings, 1)
    }

    pub fn with_basepoint(crossings: Vec<Crossing>, basepoint: Arc) -> Result<Self, PdError> {
        let mut violations = validate(&crossings);
        let max = if crossings.is_empty() { 1 } else { 2 * crossings.len() as Arc };
        if basepoint == 0 || basepoint > max {
            violations.push(Violation::Basepoint { arc: basepoint });
        }
        if !violations.is_empty() {
            return Err(PdError::Invalid(violations));
        }
        let signs = orient(&crossings).expect("validated diagram has an orientation");
        Ok(PlanarDiagram { crossings, signs, basepoint })
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn n_arcs(&self) -> usize {
        if self.crossings.is_empty() {
            1
        } else {
            2 * self.crossings.len()
        }
    }

    pub fn basepoint(&self) -> Arc {
        self.basepoint
    }

    pub fn n_plus(&self) -> usize {
        self.signs.iter().filter(|s| **s == Sign::Positive).count()
    }

    pub fn n_minus(&self) -> usize {
        self.signs.iter().filter(|s| **s == Sign::Negative).count()
    }

    pub fn writhe(&self) -> i64 {
        self.n_plus() as i64 - self.n_minus() as i64
    }

    pub fn is_unknot_diagram(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Re-runs the validator. Always empty for a constructed diagram.
    pub fn validate(&self) -> Vec<Violation> {
        validate(&self.crossings)
    }

    /// Moves the basepoint to another arc.
    pub fn rebased(&self, basepoint: Arc) -> Result<Self, PdError> {
        Self::with_basepoint(self.crossings.clone(), basepoint)
    }

    /// Diagram of the mirror knot: every crossing changes from over to under.
    ///
    /// The tuple is rotated one step so that it again starts at the incoming
    /// under-strand, which was the incoming over-strand before.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .zip(&self.signs)
            .map(|(x, s)| {
                let [a, b, c, d] = x.arcs;
                match s {
                    // over-strand entered at d
                    Sign::Positive => Crossing::new(d, a, b, c),
                    // over-strand entered at b
                    Sign::Negative => Crossing::new(b, c, d, a),
                }
            })
            .collect();
        let signs = self.signs.iter().map(|s| s.flip()).collect();
        PlanarDiagram { crossings, signs, basepoint: self.basepoint }
    }

    /// Cyclically shifts every arc label by `k` (the basepoint moves with its arc).
    pub fn relabeled(&self, k: u32) -> Self {
        if self.crossings.is_empty() {
            return self.clone();
        }
        let m = 2 * self.crossings.len() as u32;
        let shift = |l: Arc| (l - 1 + k) % m + 1;
        let crossings =
            self.crossings.iter().map(|x| Crossing { arcs: x.arcs.map(shift) }).collect();
        PlanarDiagram { crossings, signs: self.signs.clone(), basepoint: shift(self.basepoint) }
    }

    /// Canonical text form, `unknot` or `X(a,b,c,d);X(...)` in input order.
    pub fn to_pd_string(&self) -> String {
        if self.crossings.is_empty() {
            return "unknot".to_string();
        }
        self.crossings.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
    }
}

/// Diagram of the closure of a braid on `strands` strands.
///
/// Letter `i` is the generator `sigma_i` (strands `i` and `i+1`, counted from 1),
/// `-i` its inverse. Strands run upward; in `sigma_i` the over-strand goes from
/// bottom-left to top-right. The closure must be a knot.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<PlanarDiagram, PdError> {
    if word.is_empty() {
        return if strands == 1 {
            Ok(PlanarDiagram::unknot())
        } else {
            Err(PdError::Braid(format!("empty word on {strands} strands is a split link")))
        };
    }
    for &g in word {
        if g == 0 || g.unsigned_abs() as usize >= strands {
            return Err(PdError::Braid(format!("generator {g} out of range for {strands} strands")));
        }
    }
    let mut touched = vec![false; strands];
    for &g in word {
        let i = g.unsigned_abs() as usize;
        touched[i - 1] = true;
        touched[i] = true;
    }
    if let Some(p) = touched.iter().position(|t| !t) {
        return Err(PdError::Braid(format!("strand {} never crosses; the closure is split", p + 1)));
    }
    // provisional arc ids; arc k enters exactly one crossing slot
    let mut cur: Vec<usize> = (0..strands).collect();
    let mut next = strands;
    // (sw, se, nw, ne, positive)
    let mut raw = Vec::with_capacity(word.len());
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        let (sw, se) = (cur[i], cur[i + 1]);
        // the strand entering at sw leaves at ne, and se leaves at nw
        let (nw, ne) = (next, next + 1);
        next += 2;
        cur[i] = nw;
        cur[i + 1] = ne;
        raw.push([sw, se, nw, ne, usize::from(g > 0)]);
    }
    // closure: the top arc at position p is the bottom arc at position p
    let mut close: Vec<usize> = (0..next).collect();
    for (p, &top) in cur.iter().enumerate() {
        close[top] = p;
    }
    let id = |a: usize| close[a];
    // successor along the strand: sw -> ne, se -> nw
    let mut succ = vec![usize::MAX; next];
    let mut tuples = Vec::with_capacity(raw.len());
    for &[sw, se, nw, ne, pos] in &raw {
        let [sw, se, nw, ne] = [sw, se, nw, ne].map(id);
        succ[sw] = ne;
        succ[se] = nw;
        tuples.push(if pos == 1 { [se, ne, nw, sw] } else { [sw, se, ne, nw] });
    }
    // walk the knot from the first crossing's incoming under-strand
    let start = tuples[0][0];
    let mut label = vec![0 as Arc; next];
    let mut arc = start;
    let mut count = 0;
    loop {
        count += 1;
        label[arc] = count;
        arc = succ[arc];
        if arc == start {
            break;
        }
        if arc == usize::MAX || count as usize > 2 * word.len() {
            return Err(PdError::Braid("closure is not a knot".into()));
        }
    }
    if count as usize != 2 * word.len() {
        return Err(PdError::Braid("closure has more than one component".into()));
    }
    PlanarDiagram::new(tuples.iter().map(|t| Crossing { arcs: t.map(|a| label[a]) }).collect())
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_string())
    }
}

impl std::str::FromStr for PlanarDiagram {
    type Err = PdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pd(s)
    }
}

/// Parses `unknot`, a `;`/whitespace separated list of `X(a,b,c,d)`, or the
/// bracketed `PD[X[a,b,c,d],...]` form, then validates.
pub fn parse_pd(text: &str) -> Result<PlanarDiagram, PdError> {
    let crossings = parse_crossings(text)?;
    match crossings {
        None => Ok(PlanarDiagram::unknot()),
        Some(c) => PlanarDiagram::new(c),
    }
}

/// Syntax-only parse. `None` means the literal `unknot`.
pub fn parse_crossings(text: &str) -> Result<Option<Vec<Crossing>>, PdError> {
    let trimmed = text.trim();
    if trimmed == "unknot" {
        return Ok(None);
    }
    if let Some(inner) = trimmed.strip_prefix("PD[") {
        let inner = inner.strip_suffix(']').ok_or_else(|| PdError::Syntax {
            offset: trimmed.len().saturating_sub(1),
            token: trimmed.to_string(),
        })?;
        let plain = transliterate_bracketed(inner);
        if plain.trim().is_empty() {
            return Ok(None);
        }
        return parse_terms(&plain).map(Some);
    }
    if trimmed.is_empty() {
        return Err(PdError::Syntax { offset: 0, token: String::new() });
    }
    parse_terms(trimmed).map(Some)
}

fn transliterate_bracketed(inner: &str) -> String {
    let mut out = String::with_capacity(inner.len());
    let mut depth = 0;
    for ch in inner.chars() {
        match ch {
            '[' => {
                depth += 1;
                out.push('(');
            }
            ']' => {
                depth -= 1;
                out.push(')');
            }
            ',' if depth == 0 => out.push(';'),
            c if c.is_whitespace() => {}
            c => out.push(c),
        }
    }
    out
}

fn parse_terms(text: &str) -> Result<Vec<Crossing>, PdError> {
    let is_sep = |c: char| c == ';' || c.is_whitespace();
    let mut out = Vec::new();
    let mut pos = 0;
    let bytes = text.as_bytes();
    while pos < text.len() {
        if is_sep(bytes[pos] as char) {
            pos += 1;
            continue;
        }
        let end = text[pos..].find(is_sep).map_or(text.len(), |e| pos + e);
        let token = &text[pos..end];
        let crossing = parse_term(token)
            .ok_or_else(|| PdError::Syntax { offset: pos, token: token.to_string() })?;
        out.push(crossing);
        pos = end;
    }
    Ok(out)
}

fn parse_term(token: &str) -> Option<Crossing> {
    let body = token.strip_prefix("X(")?.strip_suffix(')')?;
    let mut labels = [0 as Arc; 4];
    let mut parts = body.split(',');
    for slot in labels.iter_mut() {
        let p = parts.next()?;
        if p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        *slot = p.parse().ok()?;
    }
    if parts.next().is_some() {
        return None;
    }
    Some(Crossing { arcs: labels })
}

/// Checks every diagram rule. An empty list means the crossings form a valid
/// single-component PD code (the empty list is the unknot).
pub fn validate(crossings: &[Crossing]) -> Vec<Violation> {
    let mut violations = Vec::new();
    if crossings.is_empty() {
        return violations;
    }
    let max = 2 * crossings.len() as Arc;

    for (i, x) in crossings.iter().enumerate() {
        if x.arcs.contains(&0) {
            violations.push(Violation::NonPositive { crossing: i });
        }
        for &l in &x.arcs {
            let n = x.arcs.iter().filter(|&&m| m == l).count();
            if n > 2 && !violations.contains(&Violation::RepeatedInCrossing { crossing: i, arc: l }) {
                violations.push(Violation::RepeatedInCrossing { crossing: i, arc: l });
            }
        }
    }

    let mut counts = std::collections::BTreeMap::<Arc, usize>::new();
    for x in crossings {
        for &l in &x.arcs {
            *counts.entry(l).or_default() += 1;
        }
    }
    for (&l, &count) in &counts {
        if l > max {
            violations.push(Violation::OutOfRange { arc: l, max });
        }
        if count != 2 {
            violations.push(Violation::Occurrence { arc: l, count });
        }
    }
    for l in 1..=max {
        if !counts.contains_key(&l) {
            violations.push(Violation::Occurrence { arc: l, count: 0 });
        }
    }
    if !violations.is_empty() {
        return violations;
    }

    if let Err(mut v) = orient(crossings) {
        violations.append(&mut v);
    }
    violations
}

/// Walks the knot starting at arc `a` of the first crossing and reads off
/// crossing signs. Assumes every label in `1..=2n` occurs exactly twice.
fn orient(crossings: &[Crossing]) -> Result<Vec<Sign>, Vec<Violation>> {
    if crossings.is_empty() {
        return Ok(Vec::new());
    }
    let max = 2 * crossings.len() as Arc;
    let succ = |l: Arc| l % max + 1;

    let mut ends: Vec<Vec<(usize, usize)>> = vec![Vec::new(); max as usize + 1];
    for (i, x) in crossings.iter().enumerate() {
        for (p, &l) in x.arcs.iter().enumerate() {
            ends[l as usize].push((i, p));
        }
    }

    // incoming[i][p]: whether position p of crossing i is where its arc enters
    let mut incoming = vec![[None::<bool>; 4]; crossings.len()];
    let mut visited = vec![false; max as usize + 1];
    let mut violations = Vec::new();

    let (mut cx, mut pos) = (0usize, 0usize);
    loop {
        let here = crossings[cx].arcs[pos];
        if incoming[cx][pos].is_some() {
            break;
        }
        incoming[cx][pos] = Some(true);
        visited[here as usize] = true;
        let out_pos = (pos + 2) % 4;
        incoming[cx][out_pos] = Some(false);
        let next = crossings[cx].arcs[out_pos];
        visited[next as usize] = true;
        if next != succ(here) {
            violations.push(Violation::Orientation { crossing: cx, arc: here });
        }
        let &(nx, np) = ends[next as usize]
            .iter()
            .find(|&&e| e != (cx, out_pos))
            .expect("label occurs twice");
        cx = nx;
        pos = np;
    }

    let unreached: Vec<Arc> = (1..=max).filter(|&l| !visited[l as usize]).collect();
    if !unreached.is_empty() {
        violations.push(Violation::MultiComponent { unreached });
        return Err(violations);
    }

    let mut signs = Vec::with_capacity(crossings.len());
    for (i, dir) in incoming.iter().enumerate() {
        if dir[0] != Some(true) {
            violations.push(Violation::Orientation { crossing: i, arc: crossings[i].arcs[0] });
            continue;
        }
        signs.push(if dir[3] == Some(true) { Sign::Positive } else { Sign::Negative });
    }
    if violations.is_empty() {
        Ok(signs)
    } else {
        Err(violations)
    }
}
