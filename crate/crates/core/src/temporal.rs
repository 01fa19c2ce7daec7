//! Directed temporal contact networks: ingestion, windowing, aggregation to
//! static digraphs, and per-window homology series.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::digraph::{self, from_arcs, Digraph, Label, VertexMap};
use crate::homology::{betti_curve, homology, Chain, HomologyError};
use crate::Ring;

pub const DAY: i64 = 86_400;

#[derive(Debug, Error)]
pub enum TemporalError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("bad window spec {spec:?}: {msg}")]
    Window { spec: String, msg: String },
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contact {
    pub source: Label,
    pub target: Label,
    /// Seconds.
    pub time: i64,
}

/// Contacts sorted by time; ties keep file order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ContactStream {
    pub contacts: Vec<Contact>,
    pub origin_file: Option<PathBuf>,
}

fn parse_time(tok: &str) -> Option<i64> {
    tok.parse::<i64>().ok().or_else(|| {
        let f = tok.parse::<f64>().ok()?;
        (f.fract() == 0.0 && f.abs() < 9.0e18).then_some(f as i64)
    })
}

impl ContactStream {
    /// Parses `src dst t` or `src dst weight t` lines. Blank lines and lines
    /// starting with `%` or `#` are skipped.
    pub fn parse(text: &str) -> Result<Self, TemporalError> {
        let mut contacts = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('%') || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| TemporalError::Parse { line: k + 1, msg };
            let toks: Vec<&str> = line.split_whitespace().collect();
            let t_tok = match toks.len() {
                3 => toks[2],
                4 => toks[3],
                c => return Err(err(format!("expected 3 or 4 columns, found {c}"))),
            };
            let time = parse_time(t_tok).ok_or_else(|| err(format!("bad timestamp {t_tok:?}")))?;
            let label = |s: &str| Label::from_str(s).map_err(|_| err(format!("bad vertex {s:?}")));
            contacts.push(Contact {
                source: label(toks[0])?,
                target: label(toks[1])?,
                time,
            });
        }
        contacts.sort_by_key(|c| c.time);
        Ok(ContactStream {
            contacts,
            origin_file: None,
        })
    }

    pub fn ingest(path: &Path) -> Result<Self, TemporalError> {
        let text = fs::read_to_string(path).map_err(|source| TemporalError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut s = Self::parse(&text)?;
        s.origin_file = Some(path.to_path_buf());
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.contacts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contacts.is_empty()
    }

    /// First and last timestamps.
    pub fn span(&self) -> Option<(i64, i64)> {
        Some((self.contacts.first()?.time, self.contacts.last()?.time))
    }

    pub fn vertex_count(&self) -> usize {
        self.contacts
            .iter()
            .flat_map(|c| [&c.source, &c.target])
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// First index with `time >= t`.
    fn lower_bound(&self, t: i64) -> usize {
        self.contacts.partition_point(|c| c.time < t)
    }

    /// Static digraph of the contacts in `range`: loops dropped, repeats merged.
    pub fn aggregate(&self, range: Range<usize>) -> (Digraph, VertexMap<Label>) {
        let arcs: Vec<(Label, Label)> = self.contacts[range]
            .iter()
            .map(|c| (c.source.clone(), c.target.clone()))
            .collect();
        from_arcs(&arcs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowKind {
    /// Width and stride in seconds.
    Time { width: i64, stride: i64 },
    /// Width and stride in contacts.
    Count { width: usize, stride: usize },
    CalendarDay,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowSpec {
    pub kind: WindowKind,
    /// Defaults to the first timestamp (time windows) or the midnight UTC at
    /// or before it (calendar days). Ignored by count windows.
    pub origin: Option<i64>,
}

fn parse_duration(s: &str) -> Option<i64> {
    let (num, unit) = match s.char_indices().find(|(_, c)| !c.is_ascii_digit()) {
        Some((i, _)) => s.split_at(i),
        None => (s, "s"),
    };
    let scale = match unit {
        "s" => 1,
        "m" => 60,
        "h" => 3600,
        "d" => DAY,
        "w" => 7 * DAY,
        _ => return None,
    };
    num.parse::<i64>().ok()?.checked_mul(scale)
}

impl WindowSpec {
    pub fn time(width: i64, stride: i64) -> Self {
        WindowSpec {
            kind: WindowKind::Time { width, stride },
            origin: None,
        }
    }

    pub fn count(width: usize, stride: usize) -> Self {
        WindowSpec {
            kind: WindowKind::Count { width, stride },
            origin: None,
        }
    }

    pub fn day() -> Self {
        WindowSpec {
            kind: WindowKind::CalendarDay,
            origin: None,
        }
    }

    pub fn with_origin(mut self, origin: i64) -> Self {
        self.origin = Some(origin);
        self
    }

    pub fn validate(&self) -> Result<(), String> {
        let (w, s) = match self.kind {
            WindowKind::Time { width, stride } => (width, stride),
            WindowKind::Count { width, stride } => (width as i64, stride as i64),
            WindowKind::CalendarDay => return Ok(()),
        };
        if w <= 0 || s <= 0 {
            return Err("width and stride must be positive".into());
        }
        if s > w {
            return Err("stride must not exceed width".into());
        }
        Ok(())
    }
}

impl FromStr for WindowSpec {
    type Err = TemporalError;

    /// `time:24h:8h`, `count:100:50` or `day`. Durations take an optional
    /// `s`, `m`, `h`, `d` or `w` suffix.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |msg: &str| TemporalError::Window {
            spec: s.to_string(),
            msg: msg.to_string(),
        };
        let parts: Vec<&str> = s.split(':').collect();
        let spec = match parts.as_slice() {
            ["day"] => WindowSpec::day(),
            ["time", w, st] => WindowSpec::time(
                parse_duration(w).ok_or_else(|| err("bad width"))?,
                parse_duration(st).ok_or_else(|| err("bad stride"))?,
            ),
            ["count", w, st] => WindowSpec::count(
                w.parse().map_err(|_| err("bad width"))?,
                st.parse().map_err(|_| err("bad stride"))?,
            ),
            _ => return Err(err("expected time:W:S, count:W:S or day")),
        };
        spec.validate().map_err(|m| err(&m))?;
        Ok(spec)
    }
}

/// One window. `start..end` is in seconds for time and calendar windows and
/// in contact positions for count windows; `range` indexes the stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub index: usize,
    pub start: i64,
    pub end: i64,
    pub range: Range<usize>,
}

/// All windows of `stream` under `spec`, in order. Empty windows are kept.
///
/// Time windows are `[origin + k·stride, origin + k·stride + width)` for
/// `k ≥ 0` up to the last contact. Count windows cover positions
/// `[k·stride, k·stride + width)` while they fit; a stream shorter than the
/// width forms a single window. Calendar windows are consecutive days.
pub fn windows(stream: &ContactStream, spec: &WindowSpec) -> Vec<Window> {
    let Some((first, last)) = stream.span() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut push = |start: i64, end: i64, range: Range<usize>| {
        out.push(Window {
            index: out.len(),
            start,
            end,
            range,
        })
    };
    match spec.kind {
        WindowKind::Time { width, stride } => {
            let origin = spec.origin.unwrap_or(first);
            let mut start = origin;
            while start <= last {
                let end = start + width;
                push(start, end, stream.lower_bound(start)..stream.lower_bound(end));
                start += stride;
            }
        }
        WindowKind::Count { width, stride } => {
            let len = stream.len();
            if len <= width {
                push(0, len as i64, 0..len);
            } else {
                let mut start = 0;
                while start + width <= len {
                    push(start as i64, (start + width) as i64, start..start + width);
                    start += stride;
                }
            }
        }
        WindowKind::CalendarDay => {
            let origin = spec.origin.unwrap_or(first.div_euclid(DAY) * DAY);
            let days = (last - origin).div_euclid(DAY);
            for k in 0..=days {
                let start = origin + k * DAY;
                let end = start + DAY;
                push(start, end, stream.lower_bound(start)..stream.lower_bound(end));
            }
        }
    }
    out
}

/// Dimension-2 representatives of a window, restricted to the weak
/// components with `β̃_2 > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowReps {
    pub digraph: Digraph,
    pub labels: VertexMap<Label>,
    /// Chains in window vertex indices; one list per qualifying component.
    pub components: Vec<Vec<Chain>>,
}

impl WindowReps {
    pub fn to_json(&self) -> Value {
        let label = |v: usize| self.labels.label(v).clone();
        self.components
            .iter()
            .map(|chains| Value::from(chains.iter().map(|c| c.to_json(label)).collect::<Vec<_>>()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowResult {
    pub index: usize,
    pub start: i64,
    pub end: i64,
    pub contacts: usize,
    pub vertices: usize,
    pub arcs: usize,
    pub reduced_betti: Vec<usize>,
    pub representatives: Option<WindowReps>,
}

fn window_reps(d: &Digraph, labels: VertexMap<Label>) -> Result<WindowReps, HomologyError> {
    let mut components = Vec::new();
    for (comp, map) in digraph::weak_components(d) {
        if betti_curve(&comp, 2)?[2] == 0 {
            continue;
        }
        let h = homology(&comp, 2, Ring::Rational, true)?;
        let chains = h
            .representatives
            .and_then(|mut r| r.remove(&2))
            .unwrap_or_default();
        components.push(chains.iter().map(|c| c.relabel(|v| *map.label(v))).collect());
    }
    Ok(WindowReps {
        digraph: d.clone(),
        labels,
        components,
    })
}

pub fn analyze_window(
    stream: &ContactStream,
    w: &Window,
    max_dim: usize,
    want_reps: bool,
) -> Result<WindowResult, HomologyError> {
    let (d, labels) = stream.aggregate(w.range.clone());
    let betti = betti_curve(&d, max_dim)?;
    let representatives = if want_reps && betti.get(2).is_some_and(|&b| b > 0) {
        Some(window_reps(&d, labels)?)
    } else {
        None
    };
    Ok(WindowResult {
        index: w.index,
        start: w.start,
        end: w.end,
        contacts: w.range.len(),
        vertices: d.vertex_count(),
        arcs: d.arc_count(),
        reduced_betti: betti,
        representatives,
    })
}

/// Homology of every window, in window order.
pub fn analyze(
    stream: &ContactStream,
    spec: &WindowSpec,
    max_dim: usize,
    want_reps: bool,
) -> Result<Vec<WindowResult>, TemporalError> {
    spec.validate().map_err(|msg| TemporalError::Window {
        spec: format!("{spec:?}"),
        msg,
    })?;
    Ok(windows(stream, spec)
        .par_iter()
        .map(|w| analyze_window(stream, w, max_dim, want_reps))
        .collect::<Result<_, _>>()?)
}

/// `index,start,end,contacts,vertices,arcs,b0,…`.
pub fn series_csv(results: &[WindowResult], max_dim: usize) -> String {
    let mut out = String::from("index,start,end,contacts,vertices,arcs");
    for p in 0..=max_dim {
        write!(out, ",b{p}").unwrap();
    }
    out.push('\n');
    for r in results {
        write!(
            out,
            "{},{},{},{},{},{}",
            r.index, r.start, r.end, r.contacts, r.vertices, r.arcs
        )
        .unwrap();
        for b in &r.reduced_betti {
            write!(out, ",{b}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// The representative sidecar: one entry per window that has them.
pub fn representatives_json(results: &[WindowResult]) -> Value {
    results
        .iter()
        .filter_map(|r| {
            r.representatives.as_ref().map(|reps| {
                json!({
                    "index": r.index,
                    "start": r.start,
                    "end": r.end,
                    "reduced_betti": r.reduced_betti,
                    "components": reps.to_json(),
                })
            })
        })
        .collect()
}

pub fn series_json(results: &[WindowResult]) -> Value {
    results
        .iter()
        .map(|r| {
            json!({
                "index": r.index,
                "start": r.start,
                "end": r.end,
                "contacts": r.contacts,
                "vertices": r.vertices,
                "arcs": r.arcs,
                "reduced_betti": r.reduced_betti,
            })
        })
        .collect()
}

/// An induced n-uplinked mutual dyad: `a ↔ b`, both pointing to every
/// target, and no other arcs among `{a, b} ∪ targets`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadMatch {
    pub a: usize,
    pub b: usize,
    pub targets: Vec<usize>,
}

/// Largest-found induced mutual dyad inside `support`, by a greedy choice
/// of pairwise nonadjacent targets.
pub fn find_induced_dyad(d: &Digraph, support: &[usize]) -> Option<DyadMatch> {
    let mut best: Option<DyadMatch> = None;
    for (i, &a) in support.iter().enumerate() {
        for &b in &support[i + 1..] {
            if !(d.has_arc(a, b) && d.has_arc(b, a)) {
                continue;
            }
            let mut targets: Vec<usize> = Vec::new();
            for &t in support {
                let fits = t != a
                    && t != b
                    && d.has_arc(a, t)
                    && d.has_arc(b, t)
                    && !d.has_arc(t, a)
                    && !d.has_arc(t, b)
                    && targets.iter().all(|&s| !d.has_arc(s, t) && !d.has_arc(t, s));
                if fits {
                    targets.push(t);
                }
            }
            if best.as_ref().is_none_or(|m| targets.len() > m.targets.len()) {
                best = Some(DyadMatch { a, b, targets });
            }
        }
    }
    best
}
