//! Optional cap on entry size during elimination.
//!
//! Exact arithmetic can blow up; callers that need a hard stop (the CLI honors
//! `HOMOLOG_MAX_ENTRY_BITS`) set a bit cap here. When a Smith normal form
//! computation produces an entry above the cap, the breach flag is set and the
//! computation panics; an embedding host can catch the unwind and map it to a
//! diagnostic.

use core::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use crate::ring::EuclideanDomain;

static ENTRY_BIT_CAP: AtomicUsize = AtomicUsize::new(0);
static CAP_BREACHED: AtomicBool = AtomicBool::new(false);

/// Set (or clear, with `None`) the global entry-size cap in bits.
pub fn set_entry_bit_cap(cap: Option<usize>) {
    CAP_BREACHED.store(false, Ordering::SeqCst);
    ENTRY_BIT_CAP.store(cap.unwrap_or(0), Ordering::SeqCst);
}

/// Whether a computation was aborted by the cap since it was last set.
pub fn entry_cap_breached() -> bool {
    CAP_BREACHED.load(Ordering::SeqCst)
}

pub(crate) fn check_entry<R: EuclideanDomain>(x: &R) {
    let cap = ENTRY_BIT_CAP.load(Ordering::Relaxed);
    if cap != 0 && x.bit_size() > cap {
        breach(x.bit_size(), cap);
    }
}

#[cold]
fn breach(bits: usize, cap: usize) -> ! {
    CAP_BREACHED.store(true, Ordering::SeqCst);
    panic!("entry size cap exceeded: {} bits > cap of {} bits", bits, cap);
}
