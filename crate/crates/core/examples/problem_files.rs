//! Write generated problems to JSON files and read them back.

use vikit::harness::{self, ProblemInstance};

fn main() -> vikit::Result<()> {
    let dir = std::env::temp_dir().join("vikit-problems");
    std::fs::create_dir_all(&dir)?;
    for p in [
        harness::box_corner(3)?,
        harness::strong_pseudo(2, 1.5)?,
        harness::lp_simplex()?,
    ] {
        let path = dir.join(format!("{}.json", p.name));
        p.save(&path)?;
        let back = ProblemInstance::load(&path)?;
        back.verify()?;
        println!("{} -> {} (round trip equal: {})", p.name, path.display(), back == p);
    }
    println!("{}", harness::lp_unit_square()?.to_json()?);
    Ok(())
}
