macro_rules! example_test {
    ($name:ident, $file:literal) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));

            #[test]
            fn runs() {
                main();
            }
        }
    };
}

example_test!(strata_census, "strata_census.rs");
example_test!(k_theory_classes, "k_theory_classes.rs");
example_test!(slice_plan_additivity, "slice_plan_additivity.rs");
example_test!(cube_unfolding, "cube_unfolding.rs");
example_test!(rank_exact_comparison, "rank_exact_comparison.rs");
example_test!(euler_surface, "euler_surface.rs");
example_test!(homology_pipeline, "homology_pipeline.rs");
example_test!(zigzag_modules, "zigzag_modules.rs");
