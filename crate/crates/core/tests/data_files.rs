use std::path::PathBuf;

use ds_core::catalog::{load_group, parse_group_data, write_group_data};

fn data(file: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", file]
        .iter()
        .collect()
}

#[test]
fn shipped_groups_have_declared_orders() {
    for (file, name, degree, order, primes) in [
        ("psl3_3.grp", "PSL3_3", 13, 5616, vec![2, 3, 13]),
        ("u3_3.grp", "U3_3", 28, 6048, vec![2, 3, 7]),
        ("u4_2.grp", "U4_2", 40, 25920, vec![2, 3, 5]),
        ("sz8.grp", "SZ8", 65, 29120, vec![2, 5, 7, 13]),
    ] {
        let g = load_group(data(file)).unwrap();
        assert_eq!(g.label(), Some(name));
        assert_eq!((g.degree(), g.order()), (degree, order), "{file}");
        assert_eq!(g.prime_spectrum(), primes, "{file}");
        assert!(g.is_perfect(), "{file}");
    }
}

#[test]
fn shipped_files_round_trip_bit_exact() {
    for file in ["psl3_3.grp", "u3_3.grp", "u4_2.grp", "sz8.grp"] {
        let text = std::fs::read_to_string(data(file)).unwrap();
        let g = parse_group_data(&text).unwrap();
        assert_eq!(write_group_data(&g, g.label().unwrap()), text, "{file}");
    }
}

#[test]
fn wrong_declared_order_is_rejected() {
    let text = std::fs::read_to_string(data("psl3_3.grp")).unwrap();
    let bad = text.replace("order 5616", "order 5617");
    assert!(parse_group_data(&bad).is_err());
}
