//! C ABI over the `coalwalk` toolkit.
//!
//! Graphs are opaque handles created by `cw_graph_*` constructors and
//! released with `cw_graph_free`. Every fallible function returns a
//! [`CwStatus`]; on failure the message is available from
//! `cw_last_error_message` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use coalwalk::coalesce::{default_cap, estimate, SimKind};
use coalwalk::graph::{generate, load_edge_list, FamilyKind, FamilySpec};
use coalwalk::markov::{meeting_exact, mixing_time, spectral, t_hit};
use coalwalk::{Error, Graph};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidSpec = 3,
    Disconnected = 4,
    Parse = 5,
    TooLarge = 6,
    Numerical = 7,
    AllCensored = 8,
    GenerationFailure = 9,
    Panic = 10,
}

/// Opaque graph handle.
pub struct CwGraph {
    graph: Graph,
}

/// Summary of a Monte Carlo ensemble.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CwEstimate {
    pub mean: f64,
    pub std_err: f64,
    pub ci95_lo: f64,
    pub ci95_hi: f64,
    pub trials: usize,
    pub censored: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> CwStatus {
    match e {
        Error::InvalidSpec(_) => CwStatus::InvalidSpec,
        Error::GenerationFailure { .. } => CwStatus::GenerationFailure,
        Error::Parse { .. } | Error::SelfLoop(_) => CwStatus::Parse,
        Error::DisconnectedGraph { .. } => CwStatus::Disconnected,
        Error::TooLarge { .. } => CwStatus::TooLarge,
        Error::BudgetExceeded { .. } | Error::ConvergenceFailure(_) | Error::SolverFailure(_) => CwStatus::Numerical,
        Error::AllCensored { .. } => CwStatus::AllCensored,
        _ => CwStatus::InvalidArgument,
    }
}

/// Runs `f`, recording errors and turning panics into [`CwStatus::Panic`].
fn guard<F: FnOnce() -> Result<(), Error>>(f: F) -> CwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            CwStatus::Ok
        }
        Ok(Err(e)) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            CwStatus::Panic
        }
    }
}

macro_rules! non_null {
    ($($p:expr),+) => {
        if $($p.is_null())||+ {
            set_error("null pointer argument".into());
            return CwStatus::NullPointer;
        }
    };
}

unsafe fn c_str<'a>(s: *const c_char) -> Result<&'a str, Error> {
    CStr::from_ptr(s).to_str().map_err(|_| Error::InvalidArgument("string is not UTF-8".into()))
}

fn boxed(out: *mut *mut CwGraph, graph: Graph) {
    // SAFETY: callers check `out` for null.
    unsafe { *out = Box::into_raw(Box::new(CwGraph { graph })) };
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length in bytes.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn cw_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let k = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), k);
            *buf.add(k) = 0;
        }
        msg.len()
    })
}

/// Generates a graph of a named family. `size` is the family's own parameter
/// (vertex count, levels, dimension or side); `dim`, `degree` and `alpha` may
/// be 0 for their defaults.
///
/// # Safety
/// `family` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_generate(
    family: *const c_char,
    size: usize,
    dim: u32,
    degree: usize,
    alpha: f64,
    seed: u64,
    out: *mut *mut CwGraph,
) -> CwStatus {
    non_null!(family, out);
    guard(|| {
        let kind: FamilyKind = c_str(family)?.parse()?;
        let spec = FamilySpec::from_size(
            kind,
            size,
            (dim > 0).then_some(dim),
            (degree > 0).then_some(degree),
            (alpha > 0.0).then_some(alpha),
        )?;
        boxed(out, generate(&spec, seed)?);
        Ok(())
    })
}

/// Builds a graph on `n` vertices from `edge_count` pairs stored flat in
/// `edges` (`2 * edge_count` entries).
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_from_edges(
    n: usize,
    edges: *const u32,
    edge_count: usize,
    out: *mut *mut CwGraph,
) -> CwStatus {
    non_null!(out);
    if edge_count > 0 {
        non_null!(edges);
    }
    guard(|| {
        let flat = if edge_count == 0 { &[][..] } else { std::slice::from_raw_parts(edges, 2 * edge_count) };
        let pairs = flat.chunks_exact(2).map(|p| (p[0] as usize, p[1] as usize));
        boxed(out, Graph::from_edges(n, pairs)?);
        Ok(())
    })
}

/// Parses a whitespace-separated edge list.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_from_edge_list(text: *const c_char, out: *mut *mut CwGraph) -> CwStatus {
    non_null!(text, out);
    guard(|| {
        boxed(out, load_edge_list(c_str(text)?)?);
        Ok(())
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from a `cw_graph_*` constructor and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_free(g: *mut CwGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_vertex_count(g: *const CwGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.n())
}

/// Number of edges, or 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_edge_count(g: *const CwGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.m())
}

/// Worst-case expected hitting time of the lazy walk.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cw_t_hit(g: *const CwGraph, out: *mut f64) -> CwStatus {
    non_null!(g, out);
    guard(|| {
        *out = t_hit(&(*g).graph)?;
        Ok(())
    })
}

/// Mixing time at threshold `eps`. `exact` is set to false when only an
/// upper bracket is available (`out` then holds the upper end).
///
/// # Safety
/// `g` must be a live handle; `out` and `exact` writable.
#[no_mangle]
pub unsafe extern "C" fn cw_mixing_time(g: *const CwGraph, eps: f64, out: *mut u64, exact: *mut bool) -> CwStatus {
    non_null!(g, out, exact);
    guard(|| {
        let m = mixing_time(&(*g).graph, eps)?;
        *out = m.value();
        *exact = m.is_exact();
        Ok(())
    })
}

/// Second-largest eigenvalue and spectral gap `1 - λ₂`.
///
/// # Safety
/// `g` must be a live handle; `lambda2` and `gap` writable.
#[no_mangle]
pub unsafe extern "C" fn cw_spectral_gap(g: *const CwGraph, lambda2: *mut f64, gap: *mut f64) -> CwStatus {
    non_null!(g, lambda2, gap);
    guard(|| {
        let s = spectral(&(*g).graph)?;
        *lambda2 = s.lambda2;
        *gap = s.gap;
        Ok(())
    })
}

/// Exact worst-pair and stationary-start meeting times.
///
/// # Safety
/// `g` must be a live handle; `t_meet` and `t_meet_pi` writable.
#[no_mangle]
pub unsafe extern "C" fn cw_meeting(g: *const CwGraph, t_meet: *mut f64, t_meet_pi: *mut f64) -> CwStatus {
    non_null!(g, t_meet, t_meet_pi);
    guard(|| {
        let m = meeting_exact(&(*g).graph)?;
        *t_meet = m.t_meet;
        *t_meet_pi = m.t_meet_pi;
        Ok(())
    })
}

/// Monte Carlo coalescence time from every vertex. `cap` 0 means the
/// default `50 n³`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cw_coalescence_estimate(
    g: *const CwGraph,
    trials: usize,
    seed: u64,
    cap: u64,
    out: *mut CwEstimate,
) -> CwStatus {
    non_null!(g, out);
    guard(|| {
        let graph = &(*g).graph;
        let cap = if cap == 0 { default_cap(graph.n()) } else { cap };
        let e = estimate(&SimKind::Coalescence { start: None }, graph, trials, seed, cap)?;
        *out = CwEstimate {
            mean: e.mean,
            std_err: e.stderr,
            ci95_lo: e.ci95_lo,
            ci95_hi: e.ci95_hi,
            trials: e.trials,
            censored: e.censored_count,
        };
        Ok(())
    })
}
