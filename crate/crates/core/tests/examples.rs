macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $name() {
            $name::run_example().expect("example runs");
        }
    };
}

example!(multiplication_table, "multiplication_table.rs");
example!(group_membership, "group_membership.rs");
example!(covering_map, "covering_map.rs");
example!(decompose_g2, "decompose_g2.rs");
example!(decompose_spin7, "decompose_spin7.rs");
example!(decompose_so7, "decompose_so7.rs");
example!(visible_action, "visible_action.rs");
example!(real_forms, "real_forms.rs");
