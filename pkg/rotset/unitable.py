"""Box-drawn text tables for report summaries.

Example:

    table = UniTable(max_width=60)
    table.header(["n", "S", "pass"])
    table.set_cols_align(["r", "l", "c"])
    table.add_row([2, "3/32", "yes"])
    print(table.draw())
"""

from functools import reduce

import cjkwrap
import wcwidth


def uchar_width(text):
    """Rendering width of a string in terminal cells."""
    return sum(max(0, wcwidth.wcwidth(c)) for c in text)


class ArraySizeError(Exception):
    """A row does not have as many cells as the header"""

    def __init__(self, msg):
        self.msg = msg
        Exception.__init__(self, msg, "")

    def __str__(self):
        return self.msg


class UniTable:
    TOP = 0
    MIDDLE = 1
    BOTTOM = 2
    # ew ns se sw ne nw nse nsw sew new nsew hew hnse hnsw hnsew
    STYLES = {
        "light": "─│┌┐└┘├┤┬┴┼═╞╡╪",
        "ascii": "-|+++++++++=+++",
    }

    def __init__(self, rows=None, max_width=80, style="light"):
        """max_width of 0 means cells are never wrapped."""
        self.set_max_width(max_width)
        self.set_style(style)
        self._pad = 1
        self.reset()
        if rows is not None:
            self.add_rows(rows)

    def reset(self):
        self._row_size = None
        self._header = []
        self._rows = []
        self._align = None
        return self

    def set_max_width(self, max_width):
        self._max_width = max_width if max_width > 0 else False
        return self

    def set_style(self, style="light"):
        if style not in UniTable.STYLES:
            raise ValueError(
                "style must be one of '%s' not '%s'"
                % ("','".join(sorted(UniTable.STYLES)), style)
            )
        (
            self._ew,
            self._ns,
            self._se,
            self._sw,
            self._ne,
            self._nw,
            self._nse,
            self._nsw,
            self._sew,
            self._new,
            self._nsew,
            self._hew,
            self._hnse,
            self._hnsw,
            self._hnsew,
        ) = UniTable.STYLES[style]
        return self

    def set_cols_align(self, array):
        """One of "l", "c" or "r" per column."""
        self._check_row_size(array)
        self._align = list(array)
        return self

    def header(self, array):
        self._check_row_size(array)
        self._header = [str(x) for x in array]
        return self

    def add_row(self, array):
        self._check_row_size(array)
        self._rows.append([self._fmt(x) for x in array])
        return self

    def add_rows(self, rows, header=True):
        rows = list(rows)
        if header:
            self.header(rows[0])
            rows = rows[1:]
        for row in rows:
            self.add_row(row)
        return self

    @staticmethod
    def _fmt(x):
        if isinstance(x, bool):
            return "yes" if x else "no"
        if isinstance(x, float):
            return "%.6g" % x
        return str(x)

    def _check_row_size(self, array):
        if not self._row_size:
            self._row_size = len(array)
        elif self._row_size != len(array):
            raise ArraySizeError(
                "array should contain %d elements not %s (array=%s)"
                % (self._row_size, len(array), array)
            )

    def draw(self):
        if not self._header and not self._rows:
            return ""
        widths = self._compute_cols_width()
        align = self._align or ["l"] * self._row_size
        out = self._hline(widths, UniTable.TOP)
        if self._header:
            out += self._draw_line(self._header, widths, ["c"] * self._row_size)
            out += self._hline(widths, UniTable.MIDDLE, is_header=True)
        for k, row in enumerate(self._rows):
            out += self._draw_line(row, widths, align)
            if k < len(self._rows) - 1:
                out += self._hline(widths, UniTable.MIDDLE)
        out += self._hline(widths, UniTable.BOTTOM)
        return out[:-1]

    def _compute_cols_width(self):
        """Natural column widths, shrunk round-robin when over max_width."""
        cols = ([self._header] if self._header else []) + self._rows
        maxi = [max(uchar_width(row[i]) for row in cols) for i in range(self._row_size)]
        deco = 3 * (self._row_size - 1) + 4
        if self._max_width and sum(maxi) + deco > self._max_width:
            if self._max_width < self._row_size + deco:
                raise ValueError("max_width too low to render data")
            available = self._max_width - deco
            shrunk = [0] * self._row_size
            i = 0
            while available > 0:
                if shrunk[i] < maxi[i]:
                    shrunk[i] += 1
                    available -= 1
                i = (i + 1) % self._row_size
            maxi = shrunk
        return maxi

    def _hline(self, widths, location, is_header=False):
        horiz = self._hew if is_header else self._ew
        if location == UniTable.TOP:
            left, mid, right = self._se, self._sew, self._sw
        elif location == UniTable.MIDDLE and is_header:
            left, mid, right = self._hnse, self._hnsew, self._hnsw
        elif location == UniTable.MIDDLE:
            left, mid, right = self._nse, self._nsew, self._nsw
        else:
            left, mid, right = self._ne, self._new, self._nw
        sep = horiz * self._pad + mid + horiz * self._pad
        body = sep.join(horiz * n for n in widths)
        edge = horiz * self._pad
        return "%s%s%s%s%s\n" % (left, edge, body, edge, right)

    def _draw_line(self, line, widths, align):
        wrapped = []
        for cell, width in zip(line, widths):
            lines = []
            for part in cell.split("\n"):
                lines.extend(cjkwrap.wrap(part, width) if part.strip() else [""])
            wrapped.append(lines)
        height = reduce(max, map(len, wrapped))
        for cell in wrapped:
            cell.extend([""] * (height - len(cell)))

        pad = " " * self._pad
        out = ""
        for i in range(height):
            parts = []
            for cell, width, how in zip(wrapped, widths, align):
                text = cell[i]
                fill = width - uchar_width(text)
                if how == "r":
                    parts.append(" " * fill + text)
                elif how == "c":
                    parts.append(" " * (fill // 2) + text + " " * (fill - fill // 2))
                else:
                    parts.append(text + " " * fill)
            row = pad + (pad + self._ns + pad).join(parts) + pad
            out += self._ns + row + self._ns + "\n"
        return out
