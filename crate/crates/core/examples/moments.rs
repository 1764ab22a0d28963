//! Γ_{k;2;1}(2.35, 1.41, ±0.567) next to the published Table I.

use tribody::tables::reproduce_table_one;

fn main() -> tribody::Result<()> {
    println!("{:>2} {:>7} {:>24} {:>24} {:>9}", "k", "gamma", "computed", "published", "rel");
    for c in reproduce_table_one()? {
        println!("{:>2} {:>7} {:>24.16e} {:>24.16e} {:>9.1e}", c.k, c.gamma, c.computed, c.published, c.rel_diff);
    }
    Ok(())
}
