macro_rules! example_test {
    ($module:ident, $test:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect($file);
        }
    };
}

example_test!(hello_example, hello_example_runs, "hello_library.rs");
example_test!(gluing_example, gluing_example_runs, "gluing.rs");
example_test!(
    partial_triples_example,
    partial_triples_example_runs,
    "partial_triples.rs"
);
example_test!(rotations_example, rotations_example_runs, "rotations.rs");
example_test!(filters_example, filters_example_runs, "filters.rs");
example_test!(equations_example, equations_example_runs, "equations.rs");
example_test!(gl2_chains_example, gl2_chains_example_runs, "gl2_chains.rs");
example_test!(
    amalgamation_example,
    amalgamation_example_runs,
    "amalgamation.rs"
);
example_test!(
    enumeration_example,
    enumeration_example_runs,
    "enumeration.rs"
);
example_test!(
    command_line_example,
    command_line_example_runs,
    "command_line.rs"
);
