//! Real-root classification: the complete discrimination system, a Sturm
//! chain oracle and exact isolation of real roots.

mod discrimination;
mod isolate;
mod sturm;

pub use discrimination::{
    count_roots, discriminant_sequence, discrimination_matrix, hankel_determinant, power_sums,
    rational_det, revised_sign_list, DiscriminantSequence, DiscriminationError,
    DiscriminationMatrix, RevisedSignList, RootCount, SignList,
};
pub use isolate::{
    isolate_between, isolate_real_roots, roots_between, sign_between, sign_on_interval,
    IsolatingInterval, SignVerdict,
};
pub use sturm::{count_closed, count_open, sturm_count, SturmChain, SturmError};
