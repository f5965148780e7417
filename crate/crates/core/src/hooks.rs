//! Counter hooks; no-ops unless instrumentation is compiled in.

#[cfg(any(test, feature = "instrument"))]
pub(crate) use crate::instrument::{concat, probe, split};

#[cfg(not(any(test, feature = "instrument")))]
mod noop {
    #[inline(always)]
    pub(crate) fn split() {}
    #[inline(always)]
    pub(crate) fn probe() {}
    #[inline(always)]
    pub(crate) fn concat() {}
}

#[cfg(not(any(test, feature = "instrument")))]
pub(crate) use noop::{concat, probe, split};
