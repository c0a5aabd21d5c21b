use std::path::PathBuf;

use zeta_shift::zerodata::{load_zeros, ZeroSet};

/// The first `n` zeros, from the table named by $ZETA_ZEROS if set, else a
/// table generated (once) by zerogen.
#[allow(dead_code)]
pub fn zeros(n: usize) -> ZeroSet {
    let path = match std::env::var_os("ZETA_ZEROS") {
        Some(p) => PathBuf::from(p),
        None => zerogen::cached_table(n).expect("generate zero table"),
    };
    let zs = load_zeros(&path, None).expect("load zero table");
    zs.first(n.min(zs.count())).expect("first n zeros")
}

#[allow(dead_code)]
pub fn table_path(n: usize) -> PathBuf {
    match std::env::var_os("ZETA_ZEROS") {
        Some(p) => PathBuf::from(p),
        None => zerogen::cached_table(n).expect("generate zero table"),
    }
}
