use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use treepart_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(tp_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn graph(n: usize, edges: &[(usize, usize)]) -> *mut TpGraph {
    let flat: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { tp_graph_from_edges(n, flat.as_ptr(), edges.len(), &mut g) },
        TpStatus::Ok
    );
    g
}

#[test]
fn decompose_and_read_back() {
    let path: Vec<(usize, usize)> = (0..9).map(|i| (i, i + 1)).collect();
    let g = graph(10, &path);
    unsafe {
        assert_eq!((tp_graph_num_vertices(g), tp_graph_num_edges(g)), (10, 9));
        let mut p = ptr::null_mut();
        assert_eq!(tp_decompose(g, 2, &mut p), TpStatus::Ok);
        let mut width = 0;
        assert_eq!(tp_verify_partition(g, p, &mut width), TpStatus::Ok);
        assert_eq!(width, tp_partition_width(p));

        let mut seen = [false; 10];
        for bag in 0..tp_partition_num_bags(p) {
            let mut len = 0;
            assert_eq!(
                tp_partition_bag(p, bag, ptr::null_mut(), 0, &mut len),
                if len == 0 {
                    TpStatus::Ok
                } else {
                    TpStatus::InvalidArgument
                }
            );
            let mut buf = vec![0usize; len];
            assert_eq!(tp_partition_bag(p, bag, buf.as_mut_ptr(), len, &mut len), TpStatus::Ok);
            for v in buf {
                assert!(!seen[v]);
                seen[v] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
        let (mut a, mut b) = (0, 0);
        assert_eq!(tp_partition_num_edges(p) + 1, tp_partition_num_bags(p));
        assert_eq!(tp_partition_edge(p, usize::MAX, &mut a, &mut b), TpStatus::OutOfRange);

        let mut text = ptr::null_mut();
        assert_eq!(tp_partition_emit(p, &mut text), TpStatus::Ok);
        assert!(CStr::from_ptr(text).to_str().unwrap().starts_with("s tp "));
        tp_string_free(text);
        tp_partition_free(p);
        tp_graph_free(g);
    }
}

#[test]
fn rejections_and_errors() {
    let k5: Vec<(usize, usize)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
    let g = graph(5, &k5);
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(tp_decompose(g, 1, &mut p), TpStatus::Rejected);
        assert!(p.is_null());
        assert!(last_error().starts_with("treewidth_lb"));

        assert_eq!(tp_exact_tpw(g, 2, &mut p), TpStatus::AboveKmax);
        assert_eq!(tp_exact_tpw(g, 3, &mut p), TpStatus::Ok);
        assert_eq!(tp_partition_width(p), 3);
        tp_partition_free(p);
        tp_graph_free(g);

        let mut h = ptr::null_mut();
        let bad = CString::new("p tp 2 2\n1 2\n").unwrap();
        assert_eq!(tp_graph_parse_gr(bad.as_ptr(), &mut h), TpStatus::ParseError);
        assert!(last_error().contains("line 3"));
        let loops = [0usize, 0];
        assert_eq!(
            tp_graph_from_edges(1, loops.as_ptr(), 1, &mut h),
            TpStatus::InvalidArgument
        );
        assert_eq!(tp_graph_from_edges(1, ptr::null(), 1, &mut h), TpStatus::NullPointer);
        assert_eq!(tp_decompose(ptr::null(), 1, &mut p), TpStatus::NullPointer);
        tp_graph_free(ptr::null_mut());
        tp_partition_free(ptr::null_mut());
    }
}

#[test]
fn header_is_current_and_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/treepart.h")).unwrap();
    for name in [
        "tp_graph_from_edges",
        "tp_decompose",
        "tp_partition_bag",
        "tp_last_error",
        "TP_STATUS_REJECTED",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
    let src = dir.join("tests/smoke.c");
    // Test binaries live in target/<profile>/deps; the static library one level up.
    let exe = std::env::current_exe().unwrap();
    let lib = exe.parent().and_then(Path::parent).unwrap().join("libtreepart_ffi.a");
    let bin = std::env::temp_dir().join(format!("treepart-smoke-{}", std::process::id()));
    let mut cc = Command::new("cc");
    cc.args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(dir.join("include"))
        .arg(&src);
    if lib.exists() {
        cc.arg(&lib).args(["-lpthread", "-ldl", "-lm"]);
    } else {
        cc.arg("-c");
    }
    let Ok(status) = cc.arg("-o").arg(&bin).status() else {
        eprintln!("no C compiler available; skipped compiling smoke.c");
        return;
    };
    assert!(status.success());
    if lib.exists() {
        let out = Command::new(&bin).output().unwrap();
        assert!(out.status.success());
        assert!(String::from_utf8_lossy(&out.stdout).starts_with("width "));
    }
    let _ = std::fs::remove_file(bin);
}
