from dataclasses import dataclass


@dataclass(frozen=True)
class SourceSpan:
    """Location of a node or token in the source text (1-based, end inclusive)."""
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __post_init__(self):
        if (self.start_line, self.start_col) > (self.end_line, self.end_col):
            raise ValueError(f"span start after end: {self}")

    def merge(self, other: "SourceSpan") -> "SourceSpan":
        """Smallest span covering both spans."""
        start = min((self.start_line, self.start_col),
                    (other.start_line, other.start_col))
        end = max((self.end_line, self.end_col), (other.end_line, other.end_col))
        return SourceSpan(start[0], start[1], end[0], end[1])

    def contains(self, other: "SourceSpan") -> bool:
        return ((self.start_line, self.start_col) <= (other.start_line, other.start_col)
                and (other.end_line, other.end_col) <= (self.end_line, self.end_col))

    def __str__(self) -> str:
        return f"{self.start_line}:{self.start_col}"
