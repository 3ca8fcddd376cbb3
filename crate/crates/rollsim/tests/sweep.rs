use std::path::Path;

use rollsim::config::{parse, GridFile};
use rollsim::sweep::Sweep;

#[test]
fn parallel_sweep_matches_sequential_runs_bitwise() {
    let text = "[scenario]\nkind = \"slalom\"\nduration = 6.0\n[grid]\npreview_time = [0.4, 0.6]\nspeed_kph = [30.0, 40.0]\npsi = [0.3, 0.5]\n";
    let grid: GridFile = parse(text, Path::new("grid.toml")).unwrap();
    let sweep = Sweep::from_grid(&grid).unwrap();
    let parallel = sweep.run().unwrap();
    let sequential: Vec<_> = sweep.points.iter().map(|p| sweep.run_point(p).unwrap()).collect();
    assert_eq!(parallel.len(), 8);
    assert_eq!(parallel, sequential);
    assert_eq!(sweep.run().unwrap(), parallel);
}
