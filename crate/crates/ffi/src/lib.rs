//! C ABI over `treepart`. Graphs and partitions are opaque handles owned by
//! the caller and released with the matching `*_free`. Every fallible call
//! returns a [`TpStatus`]; on failure [`tp_last_error`] describes it.
//!
//! Vertex and bag ids are 0-indexed here, unlike the file formats.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use treepart::decomp::verify_tp;
use treepart::exact::{exact_tpw, Exact};
use treepart::io;
use treepart::pipeline::{self, PipelineOutcome, PipelineParams};
use treepart::{Graph, TreePartition};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    /// The pipeline rejected; the message names the certificate.
    Rejected = 4,
    /// Instance above an exact solver's vertex cap.
    Capacity = 5,
    /// Exact width exceeds the requested maximum.
    AboveKmax = 6,
    InvalidPartition = 7,
    OutOfRange = 8,
    Internal = 9,
}

pub struct TpGraph {
    graph: Graph,
}

pub struct TpPartition {
    tp: TreePartition,
    n: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: TpStatus, msg: impl Into<String>) -> TpStatus {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("nul bytes replaced"));
    status
}

fn guard(f: impl FnOnce() -> TpStatus) -> TpStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(TpStatus::Internal, "panic inside treepart"))
}

/// Message for the last failed call on this thread. The pointer stays valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Graph on `n` vertices from `m` edges stored as `2m` ids in `edges`.
///
/// # Safety
/// `edges` must point to `2 * m` readable values (it may be null when `m == 0`)
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tp_graph_from_edges(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut TpGraph,
) -> TpStatus {
    guard(|| {
        if out.is_null() || (edges.is_null() && m > 0) {
            return fail(TpStatus::NullPointer, "null argument");
        }
        let flat = if m == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(edges, 2 * m)
        };
        match Graph::from_edges(n, flat.chunks_exact(2).map(|e| (e[0], e[1]))) {
            Ok(graph) => {
                *out = Box::into_raw(Box::new(TpGraph { graph }));
                TpStatus::Ok
            }
            Err(e) => fail(TpStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Graph from the text of a `.gr` file.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tp_graph_parse_gr(text: *const c_char, out: *mut *mut TpGraph) -> TpStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(TpStatus::NullPointer, "null argument");
        }
        let Ok(s) = CStr::from_ptr(text).to_str() else {
            return fail(TpStatus::ParseError, "input is not UTF-8");
        };
        match io::parse_gr(s) {
            Ok(graph) => {
                *out = Box::into_raw(Box::new(TpGraph { graph }));
                TpStatus::Ok
            }
            Err(e) => fail(TpStatus::ParseError, e.to_string()),
        }
    })
}

/// # Safety
/// `g` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn tp_graph_num_vertices(g: *const TpGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.n())
}

/// # Safety
/// `g` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn tp_graph_num_edges(g: *const TpGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.m())
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tp_graph_free(g: *mut TpGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Runs the approximation pipeline for parameter `k`. On a rejection returns
/// [`TpStatus::Rejected`] and leaves `*out` untouched.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tp_decompose(g: *const TpGraph, k: usize, out: *mut *mut TpPartition) -> TpStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            return fail(TpStatus::NullPointer, "null argument");
        };
        let mut params = PipelineParams::new(k);
        params.parallel = false;
        match pipeline::run(&g.graph, &params) {
            Ok(PipelineOutcome::Partition { tp, .. }) => {
                *out = Box::into_raw(Box::new(TpPartition { tp, n: g.graph.n() }));
                TpStatus::Ok
            }
            Ok(PipelineOutcome::Reject { cert, .. }) => fail(TpStatus::Rejected, format!("{}: {cert:?}", cert.kind())),
            Err(e) => fail(TpStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Minimum-width tree-partition when the width is at most `kmax`.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tp_exact_tpw(g: *const TpGraph, kmax: usize, out: *mut *mut TpPartition) -> TpStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            return fail(TpStatus::NullPointer, "null argument");
        };
        match exact_tpw(&g.graph, kmax) {
            Ok(Exact::Width { witness, .. }) => {
                *out = Box::into_raw(Box::new(TpPartition {
                    tp: witness,
                    n: g.graph.n(),
                }));
                TpStatus::Ok
            }
            Ok(Exact::Greater) => fail(TpStatus::AboveKmax, format!("tree-partition-width exceeds {kmax}")),
            Err(e) => fail(TpStatus::Capacity, e.to_string()),
        }
    })
}

/// Checks `p` against `g`; writes the width on success.
///
/// # Safety
/// Handles must be live; `width` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn tp_verify_partition(g: *const TpGraph, p: *const TpPartition, width: *mut usize) -> TpStatus {
    guard(|| {
        let (Some(g), Some(p)) = (g.as_ref(), p.as_ref()) else {
            return fail(TpStatus::NullPointer, "null argument");
        };
        match verify_tp(&g.graph, &p.tp) {
            Ok(w) => {
                if let Some(slot) = width.as_mut() {
                    *slot = w;
                }
                TpStatus::Ok
            }
            Err(e) => fail(TpStatus::InvalidPartition, e.to_string()),
        }
    })
}

/// # Safety
/// `p` must be null or a live partition handle.
#[no_mangle]
pub unsafe extern "C" fn tp_partition_width(p: *const TpPartition) -> usize {
    p.as_ref().map_or(0, |p| p.tp.width())
}

/// # Safety
/// `p` must be null or a live partition handle.
#[no_mangle]
pub unsafe extern "C" fn tp_partition_num_bags(p: *const TpPartition) -> usize {
    p.as_ref().map_or(0, |p| p.tp.num_nodes())
}

/// Copies bag `bag` into `buf` when it fits; `*len` always receives its size.
///
/// # Safety
/// `p` must be live, `len` writable, and `buf` writable for `cap` values
/// (null allowed with `cap == 0` to query the size).
#[no_mangle]
pub unsafe extern "C" fn tp_partition_bag(
    p: *const TpPartition,
    bag: usize,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> TpStatus {
    guard(|| {
        let (Some(p), false) = (p.as_ref(), len.is_null()) else {
            return fail(TpStatus::NullPointer, "null argument");
        };
        let Some(b) = p.tp.bags.get(bag) else {
            return fail(TpStatus::OutOfRange, format!("bag {bag} of {}", p.tp.num_nodes()));
        };
        *len = b.len();
        if b.len() > cap {
            return fail(
                TpStatus::InvalidArgument,
                format!("buffer holds {cap}, bag has {}", b.len()),
            );
        }
        if !b.is_empty() {
            if buf.is_null() {
                return fail(TpStatus::NullPointer, "null buffer");
            }
            ptr::copy_nonoverlapping(b.as_ptr(), buf, b.len());
        }
        TpStatus::Ok
    })
}

/// # Safety
/// `p` must be null or a live partition handle.
#[no_mangle]
pub unsafe extern "C" fn tp_partition_num_edges(p: *const TpPartition) -> usize {
    p.as_ref().map_or(0, |p| p.tp.edges.len())
}

/// # Safety
/// `p` must be live and `a`, `b` writable.
#[no_mangle]
pub unsafe extern "C" fn tp_partition_edge(
    p: *const TpPartition,
    index: usize,
    a: *mut usize,
    b: *mut usize,
) -> TpStatus {
    guard(|| {
        let (Some(p), false, false) = (p.as_ref(), a.is_null(), b.is_null()) else {
            return fail(TpStatus::NullPointer, "null argument");
        };
        match p.tp.edges.get(index) {
            Some(&(x, y)) => {
                *a = x;
                *b = y;
                TpStatus::Ok
            }
            None => fail(TpStatus::OutOfRange, format!("edge {index} of {}", p.tp.edges.len())),
        }
    })
}

/// The partition in `.tp` format; release with [`tp_string_free`].
///
/// # Safety
/// `p` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tp_partition_emit(p: *const TpPartition, out: *mut *mut c_char) -> TpStatus {
    guard(|| {
        let (Some(p), false) = (p.as_ref(), out.is_null()) else {
            return fail(TpStatus::NullPointer, "null argument");
        };
        let text = io::emit_tp(&p.tp, p.n);
        *out = CString::new(text).expect("emitted text has no NUL").into_raw();
        TpStatus::Ok
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `p` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tp_partition_free(p: *mut TpPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}
