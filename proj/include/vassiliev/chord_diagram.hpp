#pragma once

#include <string>
#include <utility>
#include <vector>

namespace vassiliev {

// A degree-k chord diagram: a perfect matching on 2k points placed on an
// oriented circle.  Instances are kept in canonical form: the
// lexicographically least chord list over the 2k rotations of the circle.
// The circle orientation is part of the data, so reflections are NOT
// quotiented out; reverse() is an explicit operation.
class ChordDiagram {
public:
    // Chords as (a,b) pairs with a < b, sorted.  Throws std::invalid_argument
    // unless the pairs form a perfect matching of {0..2k-1}.
    explicit ChordDiagram(std::vector<std::pair<int, int>> chords);

    int degree() const { return static_cast<int>(chords_.size()); }
    int points() const { return 2 * degree(); }
    const std::vector<std::pair<int, int>>& chords() const { return chords_; }

    // Position of the chord partner of point p.
    int partner(int p) const;

    // Mirror image: point i -> 2k-1-i (reversal of the circle orientation).
    ChordDiagram reversed() const;

    // Serialization: "k:[(a,b),(c,d),...]" with canonical chord order.
    std::string to_string() const;
    static ChordDiagram parse(const std::string& text);

    bool operator==(const ChordDiagram& o) const { return chords_ == o.chords_; }
    bool operator<(const ChordDiagram& o) const { return chords_ < o.chords_; }

private:
    std::vector<std::pair<int, int>> chords_; // canonical form
};

// One canonical representative per rotation class, sorted.  1 <= k <= 6.
std::vector<ChordDiagram> enumerate_chord_diagrams(int k);

} // namespace vassiliev
