package pixelframe.ui;

import pixelframe.event.ClickHandler;

public class MainWindow {
    private final String title;
    private PanelLayout layout;
    private boolean visible;

    public MainWindow(String title) {
        this.title = title;
        this.layout = new PanelLayout();
    }

    public void show() {
        visible = true;
    }

    public void addButton(ButtonWidget button, ClickHandler handler) {
        layout.attach(button);
    }
}
