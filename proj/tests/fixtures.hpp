#pragma once

// Inline copies of the grammar fixtures so unit tests run without file
// system arguments.  The acceptance suite reads the same grammars from the
// grammars/ directory.

namespace fixtures {

inline const char* kAb = R"(type: cfg
start: S
S -> a S b | a b
)";

inline const char* kDyck = R"(type: cfg
start: S
S -> ( S ) | ( ) | S S
)";

inline const char* kFin = R"(type: cfg
start: S
S -> a b c
)";

inline const char* kEvenPal = R"(type: cfg
start: S
S -> a S a | b S b | a a | b b
)";

inline const char* kAbWithEpsilon = R"(type: cfg
start: S
S -> a S b | eps
)";

inline const char* kIgAbc = R"(type: indexed
start: S
flags: f
S -> eps | T
T -> T^f | A B C
A^f -> a A
A^$ -> a
B^f -> b B
B^$ -> b
C^f -> c C
C^$ -> c
)";

inline const char* kIgAbcNf = R"(type: indexed
start: S
flags: f
S -> T0^f
T0 -> T0^f
T0^f -> T
T -> U Ac
U -> Aa Ab
Aa^f -> Ba
Aa^$ -> Da
Ba -> Ca Aa
Ca -> a
Da -> a
Ab^f -> Bb
Ab^$ -> Db
Bb -> Cb Ab
Cb -> b
Db -> b
Ac^f -> Bc
Ac^$ -> Dc
Bc -> Cc Ac
Cc -> c
Dc -> c
)";

inline const char* kIgAnBnNf = R"(type: indexed
start: S
flags: f
S -> T0^f
T0 -> T0^f
T0^f -> T
T -> Aa Ab
Aa^f -> Ba
Aa^$ -> Da
Ba -> Ca Aa
Ca -> a
Da -> a
Ab^f -> Bb
Ab^$ -> Db
Bb -> Cb Ab
Cb -> b
Db -> b
)";

inline const char* kIgPow2Nf = R"(type: indexed
start: S
flags: f
S -> A0^f
A0 -> A0^f
A0^f -> A
A^f -> B
A^$ -> D
B -> A A
D -> a
)";

inline const char* kIgAbNf = R"(type: indexed
start: S
S -> A B
A -> a
B -> b
)";

inline const char* kNfaAbStar = R"(type: nfa
start: q0
accept: q0
q0 a -> q1
q1 b -> q0
)";

}  // namespace fixtures
