package pixelframe.ui;

import java.util.ArrayList;
import java.util.List;

public class PanelLayout {
    private final List<ButtonWidget> widgets = new ArrayList<>();
    private int columns = 2;

    public void attach(ButtonWidget widget) {
        widgets.add(widget);
    }

    public void setColumns(int columns) {
        this.columns = columns;
    }
}
