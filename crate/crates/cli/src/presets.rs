//! Built-in sweep definitions reproducing the reference figures as CSV data.

use core::f64::consts::{FRAC_PI_4, PI};

use spinlock_core::sweep::{Axis, AxisParam, Observable, SchemeChoice, SweepSpec};

pub const PRESET_NAMES: [&str; 4] = ["fig3", "fig4", "fig5a", "fig5b"];

/// Returns the named preset, if it exists.
pub fn preset(name: &str) -> Option<SweepSpec<f64>> {
    match name {
        // Concurrence surface of the quarter-angle sequence over one period
        // of its trigonometric structure (4*pi/3 in tbar) and beta in [0, 7].
        "fig3" => {
            let mut spec = SweepSpec::new(SchemeChoice::B);
            spec.phi = FRAC_PI_4;
            spec.periods = 1;
            spec.axes = vec![
                Axis::linspace(AxisParam::Tbar, 0.02, 4.0 * PI / 3.0, 150),
                Axis::linspace(AxisParam::Beta, 0.0, 7.0, 71),
            ];
            spec.observables = vec![Observable::ConcurrenceClosed];
            Some(spec)
        }
        // Conditional entropy versus measurement angle at beta = 1, 1.5, 2
        // (tbar = 1, one period, a = 3).
        "fig4" => {
            let mut spec = SweepSpec::new(SchemeChoice::A);
            spec.a = 3.0;
            spec.tbar = 1.0;
            spec.periods = 1;
            spec.axes = vec![
                Axis::new(AxisParam::Beta, vec![1.0, 1.5, 2.0]),
                Axis::linspace(AxisParam::Theta, 0.0, PI, 181),
            ];
            spec.observables = vec![Observable::ConditionalEntropyCurve];
            Some(spec)
        }
        // Discord versus inverse temperature at tbar = 0.5 and 1.
        "fig5a" => {
            let mut spec = SweepSpec::new(SchemeChoice::A);
            spec.a = 3.0;
            spec.periods = 1;
            spec.axes = vec![
                Axis::new(AxisParam::Tbar, vec![0.5, 1.0]),
                Axis::linspace(AxisParam::Beta, 0.0, 7.0, 141),
            ];
            spec.observables = vec![Observable::DiscordExact];
            Some(spec)
        }
        // Discord versus period count at tbar = 0.003,
        // beta = 0.5, 1, 2, 3.
        "fig5b" => {
            let mut spec = SweepSpec::new(SchemeChoice::A);
            spec.a = 3.0;
            spec.tbar = 0.003;
            spec.axes = vec![
                Axis::new(AxisParam::Beta, vec![0.5, 1.0, 2.0, 3.0]),
                Axis::new(AxisParam::Periods, (1..=2000).map(|m| m as f64).collect()),
            ];
            spec.observables = vec![Observable::DiscordExact];
            Some(spec)
        }
        _ => None,
    }
}
