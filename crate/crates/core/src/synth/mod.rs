//! Perturbed finitely-valued schedules and their deterministic realizations.

pub mod realize;
pub mod schedule;

pub use realize::{count_targets, greedy_choices, realize_greedy, RealizationTarget};
pub use schedule::{
    fair_coin, paper_log2_example, paper_log_example, schedule_mean, schedule_summatory,
    PerturbationKind, ScheduleDocument, TwoPointSchedule,
};
