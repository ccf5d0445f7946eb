use jonescope_core::diagram::MorseTangle;
use jonescope_core::statesum::{combine, partial_sum, split_point, StateSumRun};
use jonescope_core::Result;
use rayon::prelude::*;

/// The state sum with the state space split on the color of the first free
/// crossing; one rayon task per color.
pub fn colored_jones_parallel(t: &MorseTangle, n: usize) -> Result<StateSumRun> {
    let parts = if split_point(t).is_some() {
        (0..n).into_par_iter().map(|k| partial_sum(t, n, Some(k))).collect::<Result<Vec<_>>>()?
    } else {
        vec![partial_sum(t, n, None)?]
    };
    combine(t, n, &parts)
}

/// Installs the global pool; later calls are ignored.
pub fn init_threads(threads: usize) {
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global();
}
