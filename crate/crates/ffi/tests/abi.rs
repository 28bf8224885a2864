use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use infodist_ffi::*;

fn corpus(name: &str) -> CString {
    let path = format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"));
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { infodist_string_free(s) };
    out
}

fn load(name: &str) -> *mut InfodistNetwork {
    let mut net = ptr::null_mut();
    assert_eq!(unsafe { infodist_network_from_json(corpus(name).as_ptr(), &mut net) }, InfodistStatus::Ok);
    net
}

#[test]
fn check_fig1a_yes_with_witness() {
    let net = load("fig1a.json");
    unsafe {
        assert_eq!(infodist_network_edge_count(net), 12);
        assert_eq!(infodist_network_session_count(net), 2);
        let mut v = ptr::null_mut();
        assert_eq!(infodist_check(net, 0, 0, &mut v), InfodistStatus::Ok);
        assert_eq!(infodist_verdict_decision(v), InfodistDecision::Yes);
        let mut js = ptr::null_mut();
        assert_eq!(infodist_verdict_to_json(v, &mut js), InfodistStatus::Ok);
        let doc: serde_json::Value = serde_json::from_str(&take(js)).unwrap();
        assert_eq!(doc["status"], "yes");
        assert!(doc["witness"]["cuts"].is_array());
        infodist_verdict_free(v);
        infodist_network_free(net);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut net = ptr::null_mut();
        assert_eq!(infodist_network_from_json(ptr::null(), &mut net), InfodistStatus::NullPointer);
        let cyclic = CString::new(
            r#"{"nodes":["s","a","b","d"],"edges":[{"tail":"a","head":"b"},{"tail":"b","head":"a"}],"sessions":[]}"#,
        )
        .unwrap();
        assert_eq!(infodist_network_from_json(cyclic.as_ptr(), &mut net), InfodistStatus::InvalidNetwork);
        let msg = CStr::from_ptr(infodist_last_error()).to_str().unwrap();
        assert!(msg.contains("cycle"), "{msg}");
        let bytes = [0xffu8, 0];
        assert_eq!(infodist_network_from_json(bytes.as_ptr().cast(), &mut net), InfodistStatus::InvalidUtf8);

        let net = load("single-edge.json");
        let mut value = 0usize;
        assert_eq!(infodist_min_cut(net, 5, &mut value), InfodistStatus::InvalidArgument);
        assert_eq!(infodist_min_cut(net, 0, ptr::null_mut()), InfodistStatus::NullPointer);
        assert_eq!(infodist_min_cut(net, 0, &mut value), InfodistStatus::Ok);
        assert_eq!(value, 1);
        infodist_network_free(net);
    }
}

#[test]
fn rates_and_reductions() {
    unsafe {
        let net = load("butterfly.json");
        let mut feasible = true;
        let mut lambda = ptr::null_mut();
        let rates = CString::new("1,1").unwrap();
        assert_eq!(infodist_rate_feasible(net, rates.as_ptr(), &mut feasible, &mut lambda), InfodistStatus::Ok);
        assert!(!feasible);
        assert_eq!(take(lambda), "1/2");
        infodist_network_free(net);

        let mut js = ptr::null_mut();
        assert_eq!(infodist_reduce_index(corpus("fig3-index.json").as_ptr(), &mut js), InfodistStatus::Ok);
        let doc: serde_json::Value = serde_json::from_str(&take(js)).unwrap();
        assert_eq!(doc["raw"], true);
        assert_eq!(doc["l_min"], 8);

        assert_eq!(infodist_reduce_deadline(corpus("fig4-deadline.json").as_ptr(), &mut js), InfodistStatus::Ok);
        let doc: serde_json::Value = serde_json::from_str(&take(js)).unwrap();
        assert_eq!(doc["status"], "yes");
    }
}

#[test]
fn header_declares_exports() {
    let header = std::fs::read_to_string(format!("{}/include/infodist.h", env!("CARGO_MANIFEST_DIR"))).unwrap();
    for name in [
        "infodist_network_from_json",
        "infodist_network_free",
        "infodist_check",
        "infodist_verdict_to_json",
        "infodist_rate_feasible",
        "infodist_reduce_index",
        "infodist_reduce_deadline",
        "infodist_last_error",
        "INFODIST_STATUS_INVALID_NETWORK",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

/// Compiles and runs a C program against the header and static library.
#[test]
fn c_program_links_and_runs() {
    let Ok(probe) = Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(probe.status.success());
    let target = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = target.join("libinfodist_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::temp_dir().join(format!("infodist-smoke-{}", std::process::id()));
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg(format!("-I{}", dir.join("include").display()))
        .arg(dir.join("tests/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C build failed");
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "smoke exited {:?}: {}", run.status.code(), String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
    let _ = std::fs::remove_file(exe);
}
