//! Exact invocation counters for the six group and action subroutines.

use std::ops::Sub;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

#[derive(Debug, Default)]
pub struct OpCounters {
    prod: AtomicU64,
    inv: AtomicU64,
    minrep: AtomicU64,
    orb: AtomicU64,
    stab: AtomicU64,
    trans: AtomicU64,
}

macro_rules! bump {
    ($($name:ident => $field:ident),* $(,)?) => {
        $(
            #[inline]
            pub(crate) fn $name(&self) {
                self.$field.fetch_add(1, Ordering::Relaxed);
            }
        )*
    };
}

impl OpCounters {
    bump! {
        bump_prod => prod,
        bump_inv => inv,
        bump_minrep => minrep,
        bump_orb => orb,
        bump_stab => stab,
        bump_trans => trans,
    }

    pub fn snapshot(&self) -> OpCounts {
        OpCounts {
            prod: self.prod.load(Ordering::Relaxed),
            inv: self.inv.load(Ordering::Relaxed),
            minrep: self.minrep.load(Ordering::Relaxed),
            orb: self.orb.load(Ordering::Relaxed),
            stab: self.stab.load(Ordering::Relaxed),
            trans: self.trans.load(Ordering::Relaxed),
        }
    }
}

/// A point-in-time reading of [`OpCounters`]. Differences of two readings
/// give the calls made in between.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OpCounts {
    pub prod: u64,
    pub inv: u64,
    pub minrep: u64,
    pub orb: u64,
    pub stab: u64,
    pub trans: u64,
}

impl OpCounts {
    pub(crate) fn merge(self, other: OpCounts) -> OpCounts {
        OpCounts {
            prod: self.prod + other.prod,
            inv: self.inv + other.inv,
            minrep: self.minrep + other.minrep,
            orb: self.orb + other.orb,
            stab: self.stab + other.stab,
            trans: self.trans + other.trans,
        }
    }
}

impl Sub for OpCounts {
    type Output = OpCounts;

    fn sub(self, rhs: OpCounts) -> OpCounts {
        OpCounts {
            prod: self.prod - rhs.prod,
            inv: self.inv - rhs.inv,
            minrep: self.minrep - rhs.minrep,
            orb: self.orb - rhs.orb,
            stab: self.stab - rhs.stab,
            trans: self.trans - rhs.trans,
        }
    }
}
