//! Group constructions, embedded examples and the fixture catalog.

mod catalog;
mod construct;
mod examples;

pub use catalog::{
    catalog_verify, default_fixture_dir, verify_entry, CatalogReport, EntryCheck, FixtureCatalog,
    FixtureEntry, FixtureMeta, FIXTURE_ENV,
};
pub use construct::{induced_action, restrict_to_orbit, wreath_product_action};
pub use examples::{
    biplane_point, build_affine_biplane, builtin_example, builtin_group_text, builtin_hs_subgroup,
    Example, BUILTIN_NAMES,
};
