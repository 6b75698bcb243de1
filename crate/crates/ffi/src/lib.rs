//! C interface to the stancegraph toolkit.
//!
//! Graphs and vocabularies are opaque heap handles freed with their `_free`
//! function. Every fallible call returns an [`SgStatus`]; on failure the
//! message is available from [`sg_last_error`] on the same thread until the
//! next failing call. Strings returned through out-parameters are owned by the
//! caller and released with [`sg_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use stancegraph::decoder::{decode, DecodeError, EdgeProbTensor};
use stancegraph::metrics::{gbs, ged, GedError, MetricError};
use stancegraph::order::{reorder, Ordering};
use stancegraph::plugins::TokenF1Scorer;
use stancegraph::validate::validate;
use stancegraph::{ExplanationGraph, RelationVocabulary};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    TooLarge = 5,
    Infeasible = 6,
    Io = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgOrdering {
    Dfs = 0,
    Bfs = 1,
    Topological = 2,
    Random = 3,
}

/// Outcome of the structural checks; `overall` is their conjunction.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SgValidation {
    pub relation_in_vocab: bool,
    pub concepts_max_three_words: bool,
    pub edge_count_in_range: bool,
    pub min_two_belief_concepts: bool,
    pub min_two_argument_concepts: bool,
    pub connected: bool,
    pub acyclic: bool,
    pub overall: bool,
}

/// Opaque parsed graph.
pub struct SgGraph {
    inner: ExplanationGraph,
}

/// Opaque relation vocabulary.
pub struct SgVocab {
    inner: RelationVocabulary,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(SgStatus, String);

type FfiResult<T> = Result<T, Failure>;

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> FfiResult<()>) -> SgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SgStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            SgStatus::Panic
        }
    }
}

fn fail<T>(status: SgStatus, msg: impl Into<String>) -> FfiResult<T> {
    Err(Failure(status, msg.into()))
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return fail(SgStatus::NullPointer, format!("{what} is null"));
    }
    CStr::from_ptr(p)
        .to_str()
        .or_else(|_| fail(SgStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn graph<'a>(p: *const SgGraph, what: &str) -> FfiResult<&'a ExplanationGraph> {
    match p.as_ref() {
        Some(g) => Ok(&g.inner),
        None => fail(SgStatus::NullPointer, format!("{what} is null")),
    }
}

/// Non-null out-parameters must point to writable storage.
unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> FfiResult<&'a mut T> {
    match p.as_mut() {
        Some(r) => Ok(r),
        None => fail(SgStatus::NullPointer, format!("{what} is null")),
    }
}

fn new_graph(g: ExplanationGraph) -> *mut SgGraph {
    Box::into_raw(Box::new(SgGraph { inner: g }))
}

fn c_string(s: String) -> FfiResult<*mut c_char> {
    CString::new(s)
        .map(CString::into_raw)
        .or_else(|_| fail(SgStatus::InvalidArgument, "string contains NUL"))
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn sg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `(head; relation; tail)` text into a new graph.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_parse(text: *const c_char, out: *mut *mut SgGraph) -> SgStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let g = ExplanationGraph::parse(c_str(text, "text")?)
            .or_else(|e| fail(SgStatus::Parse, e.to_string()))?;
        *out = new_graph(g);
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_free(g: *mut SgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_edge_count(g: *const SgGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.edge_count())
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_node_count(g: *const SgGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.node_count())
}

/// Canonical text form; free the result with `sg_string_free`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_serialize(g: *const SgGraph, out: *mut *mut c_char) -> SgStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        *out = c_string(graph(g, "graph")?.serialize())?;
        Ok(())
    })
}

/// Built-in relation vocabulary. Never null.
#[no_mangle]
pub extern "C" fn sg_vocab_default() -> *mut SgVocab {
    Box::into_raw(Box::new(SgVocab { inner: RelationVocabulary::default() }))
}

/// Loads a vocabulary file with one relation per line.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_vocab_load(path: *const c_char, out: *mut *mut SgVocab) -> SgStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let v = RelationVocabulary::load(std::path::Path::new(c_str(path, "path")?))
            .or_else(|e| fail(SgStatus::Io, e.to_string()))?;
        *out = Box::into_raw(Box::new(SgVocab { inner: v }));
        Ok(())
    })
}

/// # Safety
/// `v` must be null or a live vocabulary handle.
#[no_mangle]
pub unsafe extern "C" fn sg_vocab_free(v: *mut SgVocab) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Runs every structural check. A null `vocab` means the built-in one.
///
/// # Safety
/// Pointers must be live handles or NUL-terminated strings; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sg_validate(
    g: *const SgGraph,
    belief: *const c_char,
    argument: *const c_char,
    vocab: *const SgVocab,
    out: *mut SgValidation,
) -> SgStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let default;
        let vocab = match vocab.as_ref() {
            Some(v) => &v.inner,
            None => {
                default = RelationVocabulary::default();
                &default
            }
        };
        let r = validate(graph(g, "graph")?, c_str(belief, "belief")?, c_str(argument, "argument")?, vocab);
        *out = SgValidation {
            relation_in_vocab: r.relation_in_vocab,
            concepts_max_three_words: r.concepts_max_three_words,
            edge_count_in_range: r.edge_count_in_range,
            min_two_belief_concepts: r.min_two_belief_concepts,
            min_two_argument_concepts: r.min_two_argument_concepts,
            connected: r.connected,
            acyclic: r.acyclic,
            overall: r.overall,
        };
        Ok(())
    })
}

/// Normalized graph edit distance in `[0, 1]`.
///
/// # Safety
/// `pred` and `gold` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sg_ged(pred: *const SgGraph, gold: *const SgGraph, out: *mut f64) -> SgStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ged(graph(pred, "pred")?, graph(gold, "gold")?).or_else(|e| match e {
            GedError::TooLarge { .. } => fail(SgStatus::TooLarge, e.to_string()),
        })?;
        Ok(())
    })
}

/// Best matching F1 of `pred` against `gold_count` gold graphs, using token
/// F1 as the edge similarity.
///
/// # Safety
/// `golds` must point to `gold_count` live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sg_gbs(
    pred: *const SgGraph,
    golds: *const *const SgGraph,
    gold_count: usize,
    out: *mut f64,
) -> SgStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let pred = graph(pred, "pred")?;
        if golds.is_null() && gold_count > 0 {
            return fail(SgStatus::NullPointer, "golds is null");
        }
        let gold_graphs = (0..gold_count)
            .map(|i| graph(*golds.add(i), "gold").cloned())
            .collect::<FfiResult<Vec<_>>>()?;
        *out = gbs(pred, &gold_graphs, &TokenF1Scorer)
            .or_else(|e: MetricError| fail(SgStatus::InvalidArgument, e.to_string()))?;
        Ok(())
    })
}

/// Decodes a graph from a JSON edge probability tensor. A null `vocab` means
/// the built-in one. `objective` may be null.
///
/// # Safety
/// `tensor_json` must be a NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sg_decode_json(
    tensor_json: *const c_char,
    vocab: *const SgVocab,
    out: *mut *mut SgGraph,
    objective: *mut f64,
) -> SgStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let tensor = EdgeProbTensor::from_json(c_str(tensor_json, "tensor_json")?)
            .or_else(|e| fail(SgStatus::InvalidArgument, e.to_string()))?;
        let default = RelationVocabulary::default();
        let vocab = vocab.as_ref().map_or(&default, |v| &v.inner);
        let d = decode(&tensor, vocab).or_else(|e| match e {
            DecodeError::Infeasible(_) => fail(SgStatus::Infeasible, e.to_string()),
            _ => fail(SgStatus::InvalidArgument, e.to_string()),
        })?;
        if let Some(o) = objective.as_mut() {
            *o = d.objective_value;
        }
        *out = new_graph(d.graph);
        Ok(())
    })
}

/// Copy of `g` with edges in the requested traversal order.
///
/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sg_linearize(
    g: *const SgGraph,
    ordering: SgOrdering,
    seed: u64,
    out: *mut *mut SgGraph,
) -> SgStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let ordering = match ordering {
            SgOrdering::Dfs => Ordering::Dfs,
            SgOrdering::Bfs => Ordering::Bfs,
            SgOrdering::Topological => Ordering::Topological,
            SgOrdering::Random => Ordering::Random,
        };
        let r = reorder(graph(g, "graph")?, ordering, seed)
            .or_else(|e| fail(SgStatus::InvalidArgument, e.to_string()))?;
        *out = new_graph(r);
        Ok(())
    })
}
